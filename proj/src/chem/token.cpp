//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/token.hpp"

#include <cctype>

namespace sigma::chem {

namespace {

bool is_single_organic(char c) {
  switch (c) {
    case 'B':
    case 'C':
    case 'N':
    case 'O':
    case 'P':
    case 'S':
    case 'F':
    case 'I':
      return true;
    default:
      return false;
  }
}

bool is_aromatic_symbol(char c) {
  switch (c) {
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 'p':
    case 's':
      return true;
    default:
      return false;
  }
}

bool is_bond_symbol(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':';
}

[[noreturn]] void fail(std::string_view text, int pos, const std::string& what) {
  char c = pos < static_cast<int>(text.size()) ? text[pos] : '\0';
  throw SubsetError("subset violation at position " + std::to_string(pos) +
                        ": " + what,
                    c, pos);
}

// Validates bracket-atom content between '[' and ']', excluding the brackets.
// Accepted: '*' alone, or SYMBOL ['H' digits?] [charge]. Charge is one or
// more repeated '+'/'-' or a single sign with digits.
void check_bracket_body(std::string_view text, int open_pos,
                        std::string_view body) {
  if (body.empty()) fail(text, open_pos, "empty bracket atom");
  std::size_t i = 0;
  if (body[0] == '*') {
    if (body.size() != 1) {
      fail(text, open_pos + 2,
           "wildcard atom takes no hydrogens, charge, or other annotation");
    }
    return;
  }
  // element symbol
  if (body.size() >= 2 &&
      (body.compare(0, 2, "Cl") == 0 || body.compare(0, 2, "Br") == 0)) {
    i = 2;
  } else if (is_single_organic(body[0]) || is_aromatic_symbol(body[0])) {
    i = 1;
  } else {
    fail(text, open_pos + 1, "unsupported element in bracket atom");
  }
  // optional hydrogen count
  if (i < body.size() && body[i] == 'H') {
    ++i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
      ++i;
  }
  // optional charge
  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    char sign = body[i];
    std::size_t start = i;
    ++i;
    while (i < body.size() && body[i] == sign) ++i;
    if (i == start + 1) {  // single sign may carry digits
      while (i < body.size() &&
             std::isdigit(static_cast<unsigned char>(body[i])))
        ++i;
    }
  }
  if (i != body.size()) {
    fail(text, open_pos + 1 + static_cast<int>(i),
         "unsupported annotation in bracket atom (isotopes, stereo, and "
         "atom maps are outside the subset)");
  }
}

}  // namespace

bool is_atom_token(TokenKind kind) {
  return kind == TokenKind::kAtom || kind == TokenKind::kAromaticAtom ||
         kind == TokenKind::kBracketAtom || kind == TokenKind::kWildcardAnchor;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int n = static_cast<int>(text.size());
  int i = 0;
  while (i < n) {
    char c = text[i];
    if (c == 'C' && i + 1 < n && text[i + 1] == 'l') {
      tokens.push_back({TokenKind::kAtom, "Cl", i});
      i += 2;
    } else if (c == 'B' && i + 1 < n && text[i + 1] == 'r') {
      tokens.push_back({TokenKind::kAtom, "Br", i});
      i += 2;
    } else if (is_single_organic(c)) {
      tokens.push_back({TokenKind::kAtom, std::string(1, c), i});
      ++i;
    } else if (is_aromatic_symbol(c)) {
      tokens.push_back({TokenKind::kAromaticAtom, std::string(1, c), i});
      ++i;
    } else if (is_bond_symbol(c)) {
      tokens.push_back({TokenKind::kBond, std::string(1, c), i});
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenKind::kBranchOpen, "(", i});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokenKind::kBranchClose, ")", i});
      ++i;
    } else if (c >= '1' && c <= '9') {
      tokens.push_back({TokenKind::kRingDigit, std::string(1, c), i});
      ++i;
    } else if (c == '%') {
      if (i + 2 >= n || !std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text[i + 2]))) {
        fail(text, i, "'%' must be followed by exactly two digits");
      }
      tokens.push_back({TokenKind::kRingPercent, std::string(text.substr(i, 3)), i});
      i += 3;
    } else if (c == '[') {
      std::size_t close = text.find(']', i + 1);
      if (close == std::string_view::npos) {
        fail(text, i, "unterminated bracket atom");
      }
      std::string_view body = text.substr(i + 1, close - i - 1);
      check_bracket_body(text, i, body);
      TokenKind kind =
          body == "*" ? TokenKind::kWildcardAnchor : TokenKind::kBracketAtom;
      tokens.push_back({kind, std::string(text.substr(i, close - i + 1)), i});
      i = static_cast<int>(close) + 1;
    } else {
      fail(text, i,
           std::string("unsupported character '") + c +
               "' (stereochemistry, isotopes, and multi-fragment SMILES are "
               "outside the subset)");
    }
  }
  return tokens;
}

TokenKind token_kind_of_text(std::string_view text) {
  std::vector<Token> t = tokenize(text);
  if (t.size() != 1) {
    throw SubsetError("text is not a single token", text.empty() ? '\0' : text[0], 0);
  }
  return t[0].kind;
}

}  // namespace sigma::chem
