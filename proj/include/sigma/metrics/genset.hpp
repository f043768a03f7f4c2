//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_METRICS_GENSET_HPP
#define SIGMA_METRICS_GENSET_HPP

#include <string>
#include <vector>

#include "sigma/chem/mol_graph.hpp"

namespace sigma::metrics {

// A generated sample set. Everything below is derived from the raw strings
// alone, so a GenSet can be rebuilt from a .smi file byte-for-byte.
class GenSet {
 public:
  explicit GenSet(std::vector<std::string> raw);

  const std::vector<std::string>& raw() const { return raw_; }
  int raw_count() const { return static_cast<int>(raw_.size()); }

  // Complete parses, in input order (a multiset: duplicates retained).
  const std::vector<chem::MolGraph>& valid() const { return valid_graphs_; }
  const std::vector<std::string>& valid_keys() const { return valid_keys_; }
  int valid_count() const { return static_cast<int>(valid_graphs_.size()); }

  // Distinct scaffold keys over the valid multiset (empty-scaffold sentinel
  // is one bucket).
  const std::vector<std::string>& scaffold_keys() const { return scaffold_keys_; }

 private:
  std::vector<std::string> raw_;
  std::vector<chem::MolGraph> valid_graphs_;
  std::vector<std::string> valid_keys_;
  std::vector<std::string> scaffold_keys_;
};

}  // namespace sigma::metrics

#endif  // SIGMA_METRICS_GENSET_HPP
