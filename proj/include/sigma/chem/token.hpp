//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_TOKEN_HPP
#define SIGMA_CHEM_TOKEN_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigma::chem {

enum class TokenKind {
  kAtom,            // organic-subset aliphatic: B C N O P S F Cl Br I
  kAromaticAtom,    // b c n o p s
  kBracketAtom,     // [NH2+], [O-], [nH], ...
  kBond,            // - = # :
  kBranchOpen,      // (
  kBranchClose,     // )
  kRingDigit,       // 1-9
  kRingPercent,     // %nn
  kWildcardAnchor,  // [*]
};

struct Token {
  TokenKind kind;
  std::string text;
  int position = 0;  // byte offset into the source string
};

// Raised when the input uses syntax outside the supported SMILES subset
// (stereo markers, isotopes, dot-disconnection, unknown elements, ...).
class SubsetError : public std::runtime_error {
 public:
  SubsetError(std::string message, char offending, int position)
      : std::runtime_error(std::move(message)),
        offending_char(offending),
        position(position) {}

  char offending_char;
  int position;
};

// Lossless: concatenating token texts reproduces the input exactly.
// Throws SubsetError on any character or construct outside the subset.
std::vector<Token> tokenize(std::string_view text);

bool is_atom_token(TokenKind kind);

// Token kind for a vocabulary entry given only its text (used when decoding
// token-id sequences back into parseable token streams).
TokenKind token_kind_of_text(std::string_view text);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_TOKEN_HPP
