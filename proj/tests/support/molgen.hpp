//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_TESTS_SUPPORT_MOLGEN_HPP
#define SIGMA_TESTS_SUPPORT_MOLGEN_HPP

#include <string>
#include <vector>

#include "sigma/chem/mol_graph.hpp"
#include "sigma/util/rng.hpp"

namespace sigma::testsupport {

struct MolGenConfig {
  int min_atoms = 3;
  int max_atoms = 9;
  double aromatic_template_prob = 0.3;  // seed growth from a 5/6-ring
  double extra_ring_prob = 0.3;         // add one non-tree bond
  double hetero_prob = 0.25;            // non-carbon chain atoms
  double multi_bond_prob = 0.15;        // double/triple chain bonds
  double charge_prob = 0.0;             // one +/- center per molecule
};

// Random valid molecule within the supported SMILES subset.
chem::MolGraph random_molecule(util::RandomEngine& rng, const MolGenConfig& cfg);

// Canonical serializations of `n` random molecules (duplicates possible).
std::vector<std::string> random_corpus(util::RandomEngine& rng,
                                       const MolGenConfig& cfg, int n);

// Drug-like desk corpus: generated ring/chain molecules plus a fixed set of
// classic structures (so acetophenone-style pairs are in-distribution).
std::vector<std::string> training_corpus(util::RandomEngine& rng, int n);

}  // namespace sigma::testsupport

#endif  // SIGMA_TESTS_SUPPORT_MOLGEN_HPP
