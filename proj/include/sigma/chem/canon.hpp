//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_CANON_HPP
#define SIGMA_CHEM_CANON_HPP

#include <vector>

#include "sigma/chem/mol_graph.hpp"

namespace sigma::chem {

// Iterative neighborhood refinement over the label set (element, aromatic,
// charge, anchor, degree, bond-order multiset). Ranks are dense, 0-based,
// and isomorphism-invariant; atoms may still tie.
std::vector<int> refined_ranks(const MolGraph& g);

// One refinement fixpoint starting from caller-provided seed ranks
// (used by the canonicalizer's individualization search).
std::vector<int> refine_from_seed(const MolGraph& g, std::vector<int> seed);

bool ranks_discrete(const std::vector<int>& ranks);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_CANON_HPP
