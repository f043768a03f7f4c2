//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_DECODE_NGRAM_HPP
#define SIGMA_DECODE_NGRAM_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "sigma/decode/scorer.hpp"
#include "sigma/model/vocab.hpp"

namespace sigma::decode {

// Interpolated add-k n-gram model over SMILES token ids: each order is
// smoothed toward the next shorter context, bottoming out at an add-k
// unigram. Training-free stand-in for a neural scorer.
class NGramScorer : public Scorer {
 public:
  NGramScorer() = default;

  // Throws std::invalid_argument on an empty corpus or order < 1.
  static NGramScorer fit(const std::vector<std::string>& corpus,
                         const model::Vocab& vocab, int order,
                         double k_smooth = 0.1);

  int vocab_size() const override { return vocab_size_; }
  Eigen::VectorXd log_probs(std::span<const int> prefix_ids) const override;

  int order() const { return order_; }

 private:
  int order_ = 0;
  double k_smooth_ = 0.1;
  int vocab_size_ = 0;
  // support = every id except PAD/BOS (EOS included).
  std::vector<int> support_;
  // context hash -> (total count, per-id counts), one map per context length.
  struct ContextCounts {
    double total = 0.0;
    std::unordered_map<int, double> by_id;
  };
  std::vector<std::unordered_map<std::uint64_t, ContextCounts>> counts_;

  double prob(std::span<const int> context, int id) const;
};

}  // namespace sigma::decode

#endif  // SIGMA_DECODE_NGRAM_HPP
