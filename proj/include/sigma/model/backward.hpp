//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_BACKWARD_HPP
#define SIGMA_MODEL_BACKWARD_HPP

#include "sigma/model/net.hpp"

namespace sigma::model {

// Gradient accumulator shaped exactly like ModelParams; tensor_views()
// enumerates in the same declared order.
struct GradBuffers {
  ModelParams shadow;  // reused for its tensor layout; values are gradients

  explicit GradBuffers(const ModelConfig& cfg);
  void zero();
  std::vector<TensorView> tensor_views() { return shadow.tensor_views(); }
  double global_norm() const;
};

// Accumulates parameter gradients for one sequence given the upstream
// gradients on its logits and/or its final hidden states. Either input may
// be empty (size 0) when that path contributes nothing.
void backward(const ModelParams& m, const ForwardCache& cache,
              const MatrixXd& dlogits, const MatrixXd& dhidden_extra,
              GradBuffers& grads);

// Projection-head backward: upstream gradient on the normalized projections.
// Adds head-parameter gradients and returns d(loss)/d(hidden rows).
MatrixXd project_backward(const ModelParams& m, const ProjectionCache& cache,
                          const MatrixXd& d_zhat, GradBuffers& grads);

}  // namespace sigma::model

#endif  // SIGMA_MODEL_BACKWARD_HPP
