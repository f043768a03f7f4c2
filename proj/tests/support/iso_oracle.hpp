//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_TESTS_SUPPORT_ISO_ORACLE_HPP
#define SIGMA_TESTS_SUPPORT_ISO_ORACLE_HPP

#include "sigma/chem/mol_graph.hpp"

namespace sigma::testsupport {

// Exhaustive backtracking test for labeled graph isomorphism over
// (element, aromatic, charge, anchor) atom labels and bond orders.
// Independent of the canonicalization code path by construction.
bool isomorphic_brute(const chem::MolGraph& a, const chem::MolGraph& b);

}  // namespace sigma::testsupport

#endif  // SIGMA_TESTS_SUPPORT_ISO_ORACLE_HPP
