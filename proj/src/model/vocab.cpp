//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/model/vocab.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sigma::model {

Vocab Vocab::build_from_strings(std::span<const std::string> smiles_corpus) {
  std::set<std::string> texts;
  for (const std::string& s : smiles_corpus) {
    for (const chem::Token& tok : chem::tokenize(s)) {
      texts.insert(tok.text);
    }
  }
  return from_token_texts(std::vector<std::string>(texts.begin(), texts.end()));
}

Vocab Vocab::from_token_texts(std::vector<std::string> texts) {
  std::sort(texts.begin(), texts.end());
  texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
  Vocab v;
  v.texts_ = {"<pad>", "<bos>", "<eos>"};
  v.texts_.insert(v.texts_.end(), texts.begin(), texts.end());
  v.finish_build();
  return v;
}

void Vocab::finish_build() {
  kinds_.assign(texts_.size(), chem::TokenKind::kAtom);
  for (int i = 0; i < size(); ++i) {
    index_[texts_[i]] = i;
    if (i >= kSpecialCount) {
      kinds_[i] = chem::token_kind_of_text(texts_[i]);
    }
  }
}

int Vocab::id(std::string_view text) const {
  auto it = index_.find(std::string(text));
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> Vocab::encode(std::string_view smiles) const {
  std::vector<int> ids;
  for (const chem::Token& tok : chem::tokenize(smiles)) {
    int id = this->id(tok.text);
    if (id < 0) {
      throw std::out_of_range("token '" + tok.text + "' not in vocabulary");
    }
    ids.push_back(id);
  }
  return ids;
}

std::vector<chem::Token> Vocab::decode_tokens(std::span<const int> ids) const {
  std::vector<chem::Token> tokens;
  int position = 0;
  for (int id : ids) {
    if (id < 0 || id >= size()) throw std::out_of_range("token id out of range");
    if (is_special(id)) {
      throw std::invalid_argument("special token id in SMILES position");
    }
    tokens.push_back({kinds_[id], texts_[id], position});
    position += static_cast<int>(texts_[id].size());
  }
  return tokens;
}

std::string Vocab::decode_string(std::span<const int> ids) const {
  std::string out;
  for (int id : ids) {
    if (id < 0 || id >= size()) throw std::out_of_range("token id out of range");
    if (is_special(id)) {
      throw std::invalid_argument("special token id in SMILES position");
    }
    out += texts_[id];
  }
  return out;
}

std::vector<std::string> Vocab::token_texts() const {
  return std::vector<std::string>(texts_.begin() + kSpecialCount, texts_.end());
}

}  // namespace sigma::model
