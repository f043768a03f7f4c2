//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_VIEWS_PARTITION_HPP
#define SIGMA_VIEWS_PARTITION_HPP

#include <vector>

#include "sigma/chem/mol_graph.hpp"
#include "sigma/chem/write.hpp"

namespace sigma::views {

// A molecule severed at one acyclic single bond, with wildcard anchors
// marking the cut site on both components.
struct PartitionedMol {
  chem::MolGraph prefix_graph;  // carries one anchor
  chem::MolGraph suffix_graph;  // carries one anchor
  int cut_bond = -1;
  chem::CanonicalKey parent_key;
  // Both severed endpoints aromatic: a concatenated string needs an explicit
  // '-' or the parser would default the junction bond to aromatic.
  bool cut_endpoints_aromatic = false;
};

// Bonds eligible for partitioning: acyclic single bonds whose removal leaves
// two components of >= 2 heavy atoms each. Requires a complete, anchor-free
// graph.
std::vector<int> cuttable_bonds(const chem::MolGraph& g);

// Throws std::invalid_argument unless `bond` is cuttable. The endpoint
// listed first in the bond becomes the prefix side.
PartitionedMol partition(const chem::MolGraph& g, int bond);

// Rejoins the two components at their anchors (test and verification aid).
chem::MolGraph reattach(const PartitionedMol& part);

}  // namespace sigma::views

#endif  // SIGMA_VIEWS_PARTITION_HPP
