//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/mol_graph.hpp"

#include <algorithm>
#include <queue>

namespace sigma::chem {

const char* element_symbol(Element e) {
  switch (e) {
    case Element::kB: return "B";
    case Element::kC: return "C";
    case Element::kN: return "N";
    case Element::kO: return "O";
    case Element::kP: return "P";
    case Element::kS: return "S";
    case Element::kF: return "F";
    case Element::kCl: return "Cl";
    case Element::kBr: return "Br";
    case Element::kI: return "I";
    case Element::kWildcard: return "*";
  }
  return "?";
}

bool element_supports_aromatic(Element e) {
  switch (e) {
    case Element::kB:
    case Element::kC:
    case Element::kN:
    case Element::kO:
    case Element::kP:
    case Element::kS:
      return true;
    default:
      return false;
  }
}

int MolGraph::add_atom(Atom atom) {
  atoms_.push_back(atom);
  adjacency_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

int MolGraph::add_bond(int a, int b, BondOrder order) {
  if (a == b) throw std::invalid_argument("self-loop bond");
  if (a < 0 || b < 0 || a >= atom_count() || b >= atom_count())
    throw std::invalid_argument("bond endpoint out of range");
  if (has_bond(a, b)) throw std::invalid_argument("duplicate bond");
  bonds_.push_back({a, b, order});
  int id = static_cast<int>(bonds_.size()) - 1;
  adjacency_[a].push_back({b, id});
  adjacency_[b].push_back({a, id});
  return id;
}

int MolGraph::bond_between(int a, int b) const {
  for (const Neighbor& nb : adjacency_[a]) {
    if (nb.atom == b) return nb.bond;
  }
  return -1;
}

bool MolGraph::connected() const {
  if (atoms_.empty()) return true;
  std::vector<char> seen(atoms_.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const Neighbor& nb : adjacency_[u]) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = 1;
        ++count;
        q.push(nb.atom);
      }
    }
  }
  return count == atom_count();
}

int MolGraph::anchor_count() const {
  int n = 0;
  for (const Atom& a : atoms_) n += a.is_anchor ? 1 : 0;
  return n;
}

int MolGraph::anchor_atom() const {
  for (int i = 0; i < atom_count(); ++i) {
    if (atoms_[i].is_anchor) return i;
  }
  return -1;
}

namespace {

// Period-2 elements have a single valence per group; period-3+ keep the
// hypervalent states for groups 15/16.
int element_group(Element e) {
  switch (e) {
    case Element::kB: return 13;
    case Element::kC: return 14;
    case Element::kN:
    case Element::kP: return 15;
    case Element::kO:
    case Element::kS: return 16;
    case Element::kF:
    case Element::kCl:
    case Element::kBr:
    case Element::kI: return 17;
    case Element::kWildcard: return 0;
  }
  return 0;
}

bool is_period2(Element e) {
  switch (e) {
    case Element::kB:
    case Element::kC:
    case Element::kN:
    case Element::kO:
    case Element::kF:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<int> allowed_valences(Element e, int formal_charge) {
  if (e == Element::kWildcard) {
    return formal_charge == 0 ? std::vector<int>{1} : std::vector<int>{};
  }
  int group = element_group(e) - formal_charge;
  bool p2 = is_period2(e);
  switch (group) {
    case 11: return {1};
    case 12: return {2};
    case 13: return {3};
    case 14: return {4};
    case 15: return p2 ? std::vector<int>{3} : std::vector<int>{3, 5};
    case 16: return p2 ? std::vector<int>{2} : std::vector<int>{2, 4, 6};
    case 17: return {1};
    case 18: return {0};
    default: return {};
  }
}

int bond_valence_contribution(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return 1;
    case BondOrder::kDouble: return 2;
    case BondOrder::kTriple: return 3;
    case BondOrder::kAromatic: return 1;
  }
  return 1;
}

int used_valence(const MolGraph& g, int atom) {
  // Aromatic carbon consumes one unit for its part in the pi system;
  // aromatic heteroatoms (pyridine n, furan o, thiophene s) do not, or
  // valid five-membered heteroaromatics would overflow.
  const Atom& a = g.atom(atom);
  int used = (a.aromatic && a.element == Element::kC) ? 1 : 0;
  for (const MolGraph::Neighbor& nb : g.neighbors(atom)) {
    used += bond_valence_contribution(g.bond(nb.bond).order);
  }
  return used;
}

std::optional<int> implicit_hydrogens(const MolGraph& g, int atom) {
  const Atom& a = g.atom(atom);
  if (a.is_anchor || a.element == Element::kWildcard) {
    return used_valence(g, atom) <= 1 ? std::optional<int>(0) : std::nullopt;
  }
  int used = used_valence(g, atom);
  for (int v : allowed_valences(a.element, a.formal_charge)) {
    if (v >= used) return v - used;
  }
  return std::nullopt;
}

bool graph_valid(const MolGraph& g, std::string* why) {
  auto complain = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (g.atom_count() == 0) return complain("empty graph");
  if (!g.connected()) return complain("graph is not connected");
  if (g.anchor_count() > 1) return complain("more than one anchor atom");
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom& a = g.atom(i);
    if (a.aromatic && !element_supports_aromatic(a.element)) {
      return complain("atom " + std::to_string(i) + " cannot be aromatic");
    }
    if (a.is_anchor) {
      if (g.degree(i) != 1 ||
          g.bond(g.neighbors(i)[0].bond).order != BondOrder::kSingle) {
        return complain("anchor atom " + std::to_string(i) +
                        " must have exactly one single bond");
      }
      continue;
    }
    if (!implicit_hydrogens(g, i).has_value()) {
      return complain("valence overflow at atom " + std::to_string(i));
    }
  }
  return true;
}

}  // namespace sigma::chem
