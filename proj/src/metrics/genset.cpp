//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/metrics/genset.hpp"

#include <algorithm>

#include "sigma/chem/parse.hpp"
#include "sigma/chem/scaffold.hpp"
#include "sigma/chem/write.hpp"

namespace sigma::metrics {

GenSet::GenSet(std::vector<std::string> raw) : raw_(std::move(raw)) {
  for (const std::string& smiles : raw_) {
    chem::ParseResult parsed = chem::parse_string(smiles);
    if (!parsed.complete()) continue;
    valid_keys_.push_back(chem::write_canonical(parsed.graph));
    valid_graphs_.push_back(std::move(parsed.graph));
  }
  for (const chem::MolGraph& g : valid_graphs_) {
    scaffold_keys_.push_back(chem::scaffold_key(g));
  }
  std::sort(scaffold_keys_.begin(), scaffold_keys_.end());
  scaffold_keys_.erase(
      std::unique(scaffold_keys_.begin(), scaffold_keys_.end()),
      scaffold_keys_.end());
}

}  // namespace sigma::metrics
