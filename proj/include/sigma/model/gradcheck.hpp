//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_GRADCHECK_HPP
#define SIGMA_MODEL_GRADCHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sigma::model {

struct GradCheckReport {
  double lambda = 0.0;
  double max_rel_error = 0.0;
  std::string worst_tensor;
  long parameters_checked = 0;
};

// Central finite differences (eps = 1e-5) against the analytic backward
// pass on a d_model = 8, 2-layer model over a small verified view batch.
// Relative error uses max(|analytic|, |numeric|, 1e-4) as denominator so
// noise-level gradients cannot dominate.
GradCheckReport gradcheck_run(double lambda, std::uint64_t seed = 17);

// Runs lambda in {0, 0.5, 1} and returns all three reports.
std::vector<GradCheckReport> gradcheck_suite(std::uint64_t seed = 17);

}  // namespace sigma::model

#endif  // SIGMA_MODEL_GRADCHECK_HPP
