//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/decode/model_scorer.hpp"

#include <cmath>
#include <limits>

namespace sigma::decode {

Eigen::VectorXd ModelScorer::log_probs(std::span<const int> prefix_ids) const {
  model::ForwardResult fwd = model::forward(*params_, prefix_ids, false);
  Eigen::VectorXd logits = fwd.logits.row(fwd.logits.rows() - 1);
  logits(model::Vocab::kPad) = -std::numeric_limits<double>::infinity();
  logits(model::Vocab::kBos) = -std::numeric_limits<double>::infinity();

  double mx = logits.maxCoeff();
  double lse = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (std::isfinite(logits(i))) lse += std::exp(logits(i) - mx);
  }
  lse = mx + std::log(lse);
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (std::isfinite(logits(i))) logits(i) -= lse;
  }
  return logits;
}

}  // namespace sigma::decode
