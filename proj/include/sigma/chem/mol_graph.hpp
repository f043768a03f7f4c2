//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_MOL_GRAPH_HPP
#define SIGMA_CHEM_MOL_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigma::chem {

enum class Element : std::uint8_t {
  kB,
  kC,
  kN,
  kO,
  kP,
  kS,
  kF,
  kCl,
  kBr,
  kI,
  kWildcard,  // anchor / attachment point
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

const char* element_symbol(Element e);
bool element_supports_aromatic(Element e);

struct Atom {
  Element element = Element::kC;
  bool aromatic = false;
  int formal_charge = 0;
  bool is_anchor = false;
};

struct Bond {
  int a = -1;
  int b = -1;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const { return atom == a ? b : a; }
};

// Annotated molecular graph. Hydrogens are implicit everywhere: an atom's
// hydrogen count is derived from its element, charge, and bonds, never stored.
class MolGraph {
 public:
  int add_atom(Atom atom);
  // Throws std::invalid_argument on self-loops or duplicate bonds.
  int add_bond(int a, int b, BondOrder order);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  const Atom& atom(int i) const { return atoms_[i]; }
  Atom& atom(int i) { return atoms_[i]; }
  const Bond& bond(int i) const { return bonds_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  struct Neighbor {
    int atom;
    int bond;
  };
  const std::vector<Neighbor>& neighbors(int atom) const {
    return adjacency_[atom];
  }
  int degree(int atom) const { return static_cast<int>(adjacency_[atom].size()); }

  bool has_bond(int a, int b) const { return bond_between(a, b) >= 0; }
  int bond_between(int a, int b) const;  // -1 if absent

  bool connected() const;
  int anchor_count() const;
  int anchor_atom() const;  // -1 if none

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// --- Valence model -----------------------------------------------------
//
// Base table: B 3; C 4; N 3; O 2; P 3,5; S 2,4,6; halogens 1; wildcard 1.
// A formal charge of q shifts the element to its isoelectronic neighbor
// (effective group = group - q), so N+ counts like C (4), O- like F (1),
// C- like N (3), B- like C (4). The shift changes each allowed valence by
// exactly |q|.
//
// Bond contributions: single 1, double 2, triple 3, aromatic 1; every
// aromatic-flagged atom additionally consumes one valence unit for its part
// in the aromatic system. No aromatic perception is done anywhere.

// Allowed valences, ascending. Empty result = no legal valence state.
std::vector<int> allowed_valences(Element e, int formal_charge);

int bond_valence_contribution(BondOrder order);

// Bond contributions plus the aromatic adjustment for this atom.
int used_valence(const MolGraph& g, int atom);

// Hydrogens needed to reach the smallest allowed valence >= used.
// nullopt when the atom overflows every allowed valence.
std::optional<int> implicit_hydrogens(const MolGraph& g, int atom);

// Full invariant check: connected, no anchor excess, all valences satisfied.
// On failure returns false and (optionally) a diagnostic.
bool graph_valid(const MolGraph& g, std::string* why = nullptr);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_MOL_GRAPH_HPP
