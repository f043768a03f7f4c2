//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_WRITE_HPP
#define SIGMA_CHEM_WRITE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "sigma/chem/mol_graph.hpp"
#include "sigma/util/rng.hpp"

namespace sigma::chem {

// Traversal-invariant structural identity. Two keys compare equal exactly
// when the underlying graphs are isomorphic over (element, aromatic flag,
// formal charge, bond order, anchor flag).
struct CanonicalKey {
  std::string key;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    return std::hash<std::string>()(k.key);
  }
};

// Deterministic canonical serialization; invariant under any permutation of
// atom indices and a fixed point under parse-then-write.
std::string write_canonical(const MolGraph& g);

CanonicalKey canonical_key(const MolGraph& g);

// Random-DFS serialization; parses back to an isomorphic graph. With an
// unconstrained engine, every DFS linearization is reachable.
std::string write_random(const MolGraph& g, util::RandomEngine& rng,
                         std::optional<int> root = std::nullopt);

// --- View serializations for partitioned (anchored) graphs --------------
//
// Prefix views place the anchor as the final emitted atom and strip its
// token, so a suffix string can be concatenated directly after it. The
// suffix view is rooted at the anchor with its token stripped, so it starts
// at the attachment neighbor. All require exactly one anchor atom.

std::string write_prefix_view_canonical(const MolGraph& g);
std::string write_prefix_view_random(const MolGraph& g, util::RandomEngine& rng);
std::string write_suffix_view(const MolGraph& g);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_WRITE_HPP
