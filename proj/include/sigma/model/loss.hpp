//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_LOSS_HPP
#define SIGMA_MODEL_LOSS_HPP

#include <span>
#include <vector>

#include "sigma/model/net.hpp"

namespace sigma::model {

// Mean negative log-likelihood over unmasked positions. `targets[t]` is the
// id expected after position t; positions with mask[t] == 0 are skipped.
// When `dlogits` is given it receives d(loss)/d(logits) for this sequence
// alone (weight 1 per counted position / count).
// Throws std::invalid_argument on shape mismatch or an all-masked batch.
double loss_nll(const MatrixXd& logits, std::span<const int> targets,
                std::span<const unsigned char> mask, MatrixXd* dlogits = nullptr);

struct SigmaGrads {
  MatrixXd d_zu;
  MatrixXd d_zv;
  std::vector<MatrixXd> d_znegs;
};

struct SigmaTerms {
  double mean = 0.0;               // averaged over the suffix length
  std::vector<double> per_token;   // one InfoNCE term per suffix position
};

// Dense trajectory alignment term for one anchor. Rows of z_u / z_v / each
// negative are unit-norm projections at aligned suffix positions. Negatives
// with usable[k] == 0 are excluded from the denominator.
// Gradients (w.r.t. the normalized projections) are for the per-pair mean.
// Throws on tau <= 0, shape mismatch, or zero usable negatives.
SigmaTerms loss_sigma(const MatrixXd& z_u, const MatrixXd& z_v,
                      std::span<const MatrixXd> z_negs,
                      std::span<const unsigned char> usable, double tau,
                      SigmaGrads* grads = nullptr);

// L_total = L_NLL + lambda * L_SIGMA, composed exactly in double precision.
double loss_total(double nll, double sigma, double lambda);

}  // namespace sigma::model

#endif  // SIGMA_MODEL_LOSS_HPP
