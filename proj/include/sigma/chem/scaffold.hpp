//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_SCAFFOLD_HPP
#define SIGMA_CHEM_SCAFFOLD_HPP

#include <string>

#include "sigma/chem/mol_graph.hpp"

namespace sigma::chem {

// Ring systems plus the linkers between them: iteratively prunes terminal
// atoms until none remain. Acyclic molecules give an empty graph.
MolGraph murcko_scaffold(const MolGraph& g);

// Sentinel key for the empty scaffold: all acyclic molecules share it.
inline constexpr const char* kEmptyScaffoldKey = "";

// Canonical key of the scaffold, or kEmptyScaffoldKey for acyclic input.
std::string scaffold_key(const MolGraph& g);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_SCAFFOLD_HPP
