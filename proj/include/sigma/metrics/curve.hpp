//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_METRICS_CURVE_HPP
#define SIGMA_METRICS_CURVE_HPP

#include <iosfwd>
#include <vector>

#include "sigma/decode/beam.hpp"

namespace sigma::metrics {

struct CurveRow {
  int k = 0;
  int valid_count_std = 0;
  int valid_count_iso = 0;
  int scaf_std = 0;
  int scaf_iso = 0;
};

// Runs standard beam search and IsoBeam at each width in ascending k_list
// and tallies finished molecules and distinct scaffolds.
std::vector<CurveRow> diversity_curve(const decode::Scorer& scorer,
                                      const model::Vocab& vocab,
                                      const std::vector<int>& k_list,
                                      int max_steps);

// CSV: K,valid_count_std,valid_count_iso,scaf_std,scaf_iso
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace sigma::metrics

#endif  // SIGMA_METRICS_CURVE_HPP
