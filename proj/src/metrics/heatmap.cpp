//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/metrics/heatmap.hpp"

#include <ostream>
#include <stdexcept>

namespace sigma::metrics {

namespace {

// Hidden states at each token's own position ([BOS] row excluded).
Eigen::MatrixXd token_states(const model::ModelParams& m,
                             const model::Vocab& vocab, const std::string& s,
                             std::vector<std::string>* labels) {
  std::vector<int> ids{model::Vocab::kBos};
  for (int id : vocab.encode(s)) {
    ids.push_back(id);
    labels->push_back(vocab.text(id));
  }
  model::ForwardResult fwd = model::forward(m, ids, false);
  return fwd.hidden.bottomRows(fwd.hidden.rows() - 1);
}

}  // namespace

double HeatmapMatrix::block_mean(int rows, int cols) const {
  if (rows <= 0 || cols <= 0 || rows > cells.rows() || cols > cells.cols()) {
    throw std::invalid_argument("heatmap block out of range");
  }
  return cells.topLeftCorner(rows, cols).mean();
}

HeatmapMatrix heatmap(const model::ModelParams& m, const model::Vocab& vocab,
                      const std::string& s1, const std::string& s2) {
  HeatmapMatrix hm;
  Eigen::MatrixXd h1 = token_states(m, vocab, s1, &hm.row_labels);
  Eigen::MatrixXd h2 = token_states(m, vocab, s2, &hm.col_labels);
  hm.cells.resize(h1.rows(), h2.rows());
  for (Eigen::Index i = 0; i < h1.rows(); ++i) {
    for (Eigen::Index j = 0; j < h2.rows(); ++j) {
      double denom = h1.row(i).norm() * h2.row(j).norm();
      hm.cells(i, j) = denom > 0.0 ? h1.row(i).dot(h2.row(j)) / denom : 0.0;
    }
  }
  return hm;
}

void write_heatmap_csv(std::ostream& out, const HeatmapMatrix& hm) {
  out << "token";
  for (const std::string& label : hm.col_labels) out << ',' << label;
  out << '\n';
  for (Eigen::Index i = 0; i < hm.cells.rows(); ++i) {
    out << hm.row_labels[i];
    for (Eigen::Index j = 0; j < hm.cells.cols(); ++j) {
      out << ',' << hm.cells(i, j);
    }
    out << '\n';
  }
}

}  // namespace sigma::metrics
