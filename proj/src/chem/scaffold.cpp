//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/scaffold.hpp"

#include <vector>

#include "sigma/chem/write.hpp"

namespace sigma::chem {

MolGraph murcko_scaffold(const MolGraph& g) {
  int n = g.atom_count();
  std::vector<char> removed(n, 0);
  std::vector<int> degree(n);
  for (int i = 0; i < n; ++i) degree[i] = g.degree(i);

  // Peel terminal atoms until a fixpoint; what survives is rings + linkers.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!removed[i] && degree[i] <= 1) {
        removed[i] = 1;
        changed = true;
        for (const MolGraph::Neighbor& nb : g.neighbors(i)) {
          if (!removed[nb.atom]) --degree[nb.atom];
        }
      }
    }
  }

  MolGraph scaffold;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!removed[i]) remap[i] = scaffold.add_atom(g.atom(i));
  }
  for (const Bond& b : g.bonds()) {
    if (remap[b.a] >= 0 && remap[b.b] >= 0) {
      scaffold.add_bond(remap[b.a], remap[b.b], b.order);
    }
  }
  return scaffold;
}

std::string scaffold_key(const MolGraph& g) {
  MolGraph scaffold = murcko_scaffold(g);
  if (scaffold.atom_count() == 0) return kEmptyScaffoldKey;
  return write_canonical(scaffold);
}

}  // namespace sigma::chem
