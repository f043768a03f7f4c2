//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/metrics/metrics.hpp"

#include <set>
#include <stdexcept>

#include "sigma/chem/fingerprint.hpp"

namespace sigma::metrics {

Ratio validity(const GenSet& g) {
  if (g.raw_count() == 0) return {0.0, true};
  return {static_cast<double>(g.valid_count()) / g.raw_count(), false};
}

Ratio uniqueness(const GenSet& g) {
  if (g.valid_count() == 0) return {0.0, true};
  std::set<std::string> unique(g.valid_keys().begin(), g.valid_keys().end());
  return {static_cast<double>(unique.size()) / g.valid_count(), false};
}

Ratio novelty(const GenSet& g, std::span<const std::string> train_keys,
              double* unique_variant) {
  std::set<std::string> train(train_keys.begin(), train_keys.end());
  if (g.valid_count() == 0) {
    if (unique_variant != nullptr) *unique_variant = 0.0;
    return {0.0, true};
  }
  int novel = 0;
  for (const std::string& key : g.valid_keys()) {
    if (train.count(key) == 0) ++novel;
  }
  if (unique_variant != nullptr) {
    std::set<std::string> unique(g.valid_keys().begin(), g.valid_keys().end());
    int unique_novel = 0;
    for (const std::string& key : unique) {
      if (train.count(key) == 0) ++unique_novel;
    }
    *unique_variant =
        unique.empty() ? 0.0
                       : static_cast<double>(unique_novel) / unique.size();
  }
  return {static_cast<double>(novel) / g.valid_count(), false};
}

double intdiv(const GenSet& g, double* off_diagonal_variant, int radius,
              int nbits) {
  int n = g.valid_count();
  if (n == 0) throw std::invalid_argument("intdiv needs at least one valid molecule");
  std::vector<chem::Fingerprint> fps;
  fps.reserve(n);
  for (const chem::MolGraph& mol : g.valid()) {
    fps.push_back(chem::circular_fingerprint(mol, radius, nbits));
  }
  double sum = 0.0;       // includes i == j, as the formula is written
  double off_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double t = chem::tanimoto(fps[i], fps[j]);
      sum += t;
      if (i != j) off_sum += t;
    }
  }
  if (off_diagonal_variant != nullptr) {
    *off_diagonal_variant =
        n > 1 ? 1.0 - off_sum / (static_cast<double>(n) * (n - 1)) : 0.0;
  }
  return 1.0 - sum / (static_cast<double>(n) * n);
}

int scaffold_count(const GenSet& g) {
  return static_cast<int>(g.scaffold_keys().size());
}

double tis(const model::ModelParams& m, const model::Vocab& vocab,
           std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("tis needs at least one pair");
  double total = 0.0;
  for (const auto& [s1, s2] : pairs) {
    model::VectorXd a = model::encode_prefix(m, vocab, s1);
    model::VectorXd b = model::encode_prefix(m, vocab, s2);
    total += 1.0 - a.dot(b);
  }
  return total / static_cast<double>(pairs.size());
}

double fcd_unavailable() {
  throw std::runtime_error(
      "FCD requires a pretrained ChemNet activation model, which is not "
      "bundled; no in-repo substitute is provided");
}

}  // namespace sigma::metrics
