//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_METRICS_HEATMAP_HPP
#define SIGMA_METRICS_HEATMAP_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigma/model/net.hpp"

namespace sigma::metrics {

// Token-by-token cosine similarity of hidden states between two strings.
// Rows follow s1's tokens, columns s2's.
struct HeatmapMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Eigen::MatrixXd cells;  // in [-1, 1]

  // Mean over the block [0, rows) x [0, cols) (prefix alignment readout).
  double block_mean(int rows, int cols) const;
};

HeatmapMatrix heatmap(const model::ModelParams& m, const model::Vocab& vocab,
                      const std::string& s1, const std::string& s2);

// CSV with labeled header row/column.
void write_heatmap_csv(std::ostream& out, const HeatmapMatrix& hm);

}  // namespace sigma::metrics

#endif  // SIGMA_METRICS_HEATMAP_HPP
