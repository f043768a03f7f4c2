//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/views/partition.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace sigma::views {

using chem::Atom;
using chem::Bond;
using chem::BondOrder;
using chem::Element;
using chem::MolGraph;

namespace {

// Atoms reachable from `start` without crossing bond `skip`.
std::vector<char> component_of(const MolGraph& g, int start, int skip) {
  std::vector<char> in(g.atom_count(), 0);
  std::queue<int> q;
  q.push(start);
  in[start] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const MolGraph::Neighbor& nb : g.neighbors(u)) {
      if (nb.bond == skip || in[nb.atom]) continue;
      in[nb.atom] = 1;
      q.push(nb.atom);
    }
  }
  return in;
}

MolGraph extract_component(const MolGraph& g, const std::vector<char>& keep,
                           int attach_atom, int* anchor_neighbor_out) {
  MolGraph out;
  std::vector<int> remap(g.atom_count(), -1);
  for (int i = 0; i < g.atom_count(); ++i) {
    if (keep[i]) remap[i] = out.add_atom(g.atom(i));
  }
  for (const Bond& b : g.bonds()) {
    if (remap[b.a] >= 0 && remap[b.b] >= 0) {
      out.add_bond(remap[b.a], remap[b.b], b.order);
    }
  }
  Atom anchor;
  anchor.element = Element::kWildcard;
  anchor.is_anchor = true;
  int anchor_idx = out.add_atom(anchor);
  out.add_bond(remap[attach_atom], anchor_idx, BondOrder::kSingle);
  *anchor_neighbor_out = remap[attach_atom];
  return out;
}

}  // namespace

std::vector<int> cuttable_bonds(const MolGraph& g) {
  std::vector<int> result;
  for (int b = 0; b < g.bond_count(); ++b) {
    const Bond& bond = g.bond(b);
    if (bond.order != BondOrder::kSingle) continue;  // anchors take one single bond
    std::vector<char> side_a = component_of(g, bond.a, b);
    if (side_a[bond.b]) continue;  // bond sits in a ring
    int size_a = static_cast<int>(std::count(side_a.begin(), side_a.end(), 1));
    int size_b = g.atom_count() - size_a;
    if (size_a >= 2 && size_b >= 2) result.push_back(b);
  }
  return result;
}

PartitionedMol partition(const MolGraph& g, int bond) {
  std::vector<int> eligible = cuttable_bonds(g);
  if (std::find(eligible.begin(), eligible.end(), bond) == eligible.end()) {
    throw std::invalid_argument("bond is not cuttable");
  }
  const Bond& cut = g.bond(bond);
  PartitionedMol part;
  part.cut_bond = bond;
  part.parent_key = chem::canonical_key(g);
  part.cut_endpoints_aromatic = g.atom(cut.a).aromatic && g.atom(cut.b).aromatic;

  std::vector<char> side_a = component_of(g, cut.a, bond);
  std::vector<char> side_b(g.atom_count(), 0);
  for (int i = 0; i < g.atom_count(); ++i) side_b[i] = side_a[i] ? 0 : 1;

  int ignored = -1;
  part.prefix_graph = extract_component(g, side_a, cut.a, &ignored);
  part.suffix_graph = extract_component(g, side_b, cut.b, &ignored);
  return part;
}

chem::MolGraph reattach(const PartitionedMol& part) {
  MolGraph out;
  auto add_side = [&out](const MolGraph& side, int* attach) {
    std::vector<int> remap(side.atom_count(), -1);
    int anchor = side.anchor_atom();
    for (int i = 0; i < side.atom_count(); ++i) {
      if (i != anchor) remap[i] = out.add_atom(side.atom(i));
    }
    for (const Bond& b : side.bonds()) {
      if (b.a == anchor || b.b == anchor) continue;
      out.add_bond(remap[b.a], remap[b.b], b.order);
    }
    *attach = remap[side.neighbors(anchor)[0].atom];
  };
  int attach_prefix = -1;
  int attach_suffix = -1;
  add_side(part.prefix_graph, &attach_prefix);
  add_side(part.suffix_graph, &attach_suffix);
  out.add_bond(attach_prefix, attach_suffix, BondOrder::kSingle);
  return out;
}

}  // namespace sigma::views
