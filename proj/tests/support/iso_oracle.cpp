//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "iso_oracle.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

namespace sigma::testsupport {

using chem::Atom;
using chem::MolGraph;

namespace {

using Label = std::tuple<int, bool, int, bool>;

Label label_of(const Atom& a) {
  return {static_cast<int>(a.element), a.aromatic, a.formal_charge, a.is_anchor};
}

bool labels_match(const Atom& x, const Atom& y) {
  return label_of(x) == label_of(y);
}

struct Matcher {
  const MolGraph& a;
  const MolGraph& b;
  std::vector<int> map;     // a-atom -> b-atom or -1
  std::vector<char> used;   // b-atom taken
  std::vector<int> order;   // a-atoms in BFS order (connected graph)

  bool feasible(int u, int x) const {
    if (!labels_match(a.atom(u), b.atom(x))) return false;
    if (a.degree(u) != b.degree(x)) return false;
    // Every already-mapped a-atom must agree on adjacency and bond order.
    for (int w = 0; w < a.atom_count(); ++w) {
      if (map[w] < 0) continue;
      int ab = a.bond_between(u, w);
      int bb = b.bond_between(x, map[w]);
      if ((ab >= 0) != (bb >= 0)) return false;
      if (ab >= 0 && a.bond(ab).order != b.bond(bb).order) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    int u = order[depth];
    for (int x = 0; x < b.atom_count(); ++x) {
      if (used[x] || !feasible(u, x)) continue;
      map[u] = x;
      used[x] = 1;
      if (extend(depth + 1)) return true;
      map[u] = -1;
      used[x] = 0;
    }
    return false;
  }
};

std::vector<Label> sorted_labels(const MolGraph& g) {
  std::vector<Label> out;
  for (const Atom& a : g.atoms()) out.push_back(label_of(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> sorted_degrees(const MolGraph& g) {
  std::vector<int> out;
  for (int i = 0; i < g.atom_count(); ++i) out.push_back(g.degree(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> bfs_order(const MolGraph& g) {
  std::vector<int> order;
  std::vector<char> seen(g.atom_count(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int u = queue[i];
    order.push_back(u);
    for (const MolGraph::Neighbor& nb : g.neighbors(u)) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = 1;
        queue.push_back(nb.atom);
      }
    }
  }
  return order;
}

}  // namespace

bool isomorphic_brute(const MolGraph& a, const MolGraph& b) {
  if (a.atom_count() != b.atom_count()) return false;
  if (a.bond_count() != b.bond_count()) return false;
  if (a.atom_count() == 0) return true;
  if (sorted_labels(a) != sorted_labels(b)) return false;
  if (sorted_degrees(a) != sorted_degrees(b)) return false;

  Matcher m{a, b, std::vector<int>(a.atom_count(), -1),
            std::vector<char>(b.atom_count(), 0), bfs_order(a)};
  return m.extend(0);
}

}  // namespace sigma::testsupport
