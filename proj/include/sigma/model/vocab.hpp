//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_VOCAB_HPP
#define SIGMA_MODEL_VOCAB_HPP

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigma/chem/token.hpp"

namespace sigma::model {

// Corpus-derived token vocabulary. Special ids are fixed: PAD 0, BOS 1,
// EOS 2; SMILES tokens follow in lexicographic text order, so the same
// corpus always yields the same mapping.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kSpecialCount = 3;

  Vocab() = default;

  static Vocab build_from_strings(std::span<const std::string> smiles_corpus);
  static Vocab from_token_texts(std::vector<std::string> texts);  // sorted-unique'd

  int size() const { return static_cast<int>(texts_.size()); }

  // -1 when the text is not in the vocabulary.
  int id(std::string_view text) const;
  const std::string& text(int id) const { return texts_[id]; }
  bool is_special(int id) const { return id < kSpecialCount; }

  // Token ids for a SMILES string, without BOS/EOS.
  // Throws std::out_of_range when a token is missing from the vocabulary.
  std::vector<int> encode(std::string_view smiles) const;

  // Token stream for parse(); special ids are rejected.
  std::vector<chem::Token> decode_tokens(std::span<const int> ids) const;
  std::string decode_string(std::span<const int> ids) const;

  // Non-special token texts in id order (for checkpoint round-trips).
  std::vector<std::string> token_texts() const;

 private:
  std::vector<std::string> texts_;
  std::vector<chem::TokenKind> kinds_;  // meaningful for non-special ids
  std::unordered_map<std::string, int> index_;

  void finish_build();
};

}  // namespace sigma::model

#endif  // SIGMA_MODEL_VOCAB_HPP
