//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_DECODE_MODEL_SCORER_HPP
#define SIGMA_DECODE_MODEL_SCORER_HPP

#include "sigma/decode/scorer.hpp"
#include "sigma/model/net.hpp"

namespace sigma::decode {

// Wraps a trained checkpoint as a Scorer: log-softmax of the final-position
// logits, with PAD and BOS masked out and the rest renormalized.
class ModelScorer : public Scorer {
 public:
  ModelScorer(const model::ModelParams* params, const model::Vocab* vocab)
      : params_(params), vocab_(vocab) {}

  int vocab_size() const override { return vocab_->size(); }
  Eigen::VectorXd log_probs(std::span<const int> prefix_ids) const override;

 private:
  const model::ModelParams* params_;
  const model::Vocab* vocab_;
};

}  // namespace sigma::decode

#endif  // SIGMA_DECODE_MODEL_SCORER_HPP
