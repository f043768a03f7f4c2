//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_FINGERPRINT_HPP
#define SIGMA_CHEM_FINGERPRINT_HPP

#include <cstdint>
#include <vector>

#include "sigma/chem/mol_graph.hpp"

namespace sigma::chem {

// Circular (Morgan-style) substructure fingerprint. Deterministic across
// platforms and invariant under atom reordering.
struct Fingerprint {
  std::vector<std::uint64_t> words;
  int nbits = 0;
  int radius = 0;

  bool test(int bit) const {
    return (words[bit >> 6] >> (bit & 63)) & 1ULL;
  }
  void set(int bit) { words[bit >> 6] |= 1ULL << (bit & 63); }
  int popcount() const;
};

Fingerprint circular_fingerprint(const MolGraph& g, int radius = 2,
                                 int nbits = 1024);

// |a & b| / |a | b|; 1.0 when both fingerprints are empty.
// Throws std::invalid_argument on nbits mismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_FINGERPRINT_HPP
