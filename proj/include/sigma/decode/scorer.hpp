//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_DECODE_SCORER_HPP
#define SIGMA_DECODE_SCORER_HPP

#include <Eigen/Dense>
#include <span>

namespace sigma::decode {

// Next-token distribution over the vocabulary given a token-id prefix
// (which always starts with BOS). Finite entries form a normalized
// distribution (logsumexp = 0); entries the scorer never proposes (PAD,
// BOS) are -inf. Deterministic for a fixed prefix.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual int vocab_size() const = 0;
  virtual Eigen::VectorXd log_probs(std::span<const int> prefix_ids) const = 0;
};

}  // namespace sigma::decode

#endif  // SIGMA_DECODE_SCORER_HPP
