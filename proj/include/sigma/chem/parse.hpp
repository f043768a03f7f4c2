//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_CHEM_PARSE_HPP
#define SIGMA_CHEM_PARSE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigma/chem/mol_graph.hpp"
#include "sigma/chem/token.hpp"

namespace sigma::chem {

enum class ParseStatus {
  kComplete,      // a valid molecule as written
  kIncomplete,    // some legal continuation can still complete it
  kIrrecoverable  // no continuation can ever make it valid
};

struct OpenRingInfo {
  int number = 0;
  int atom = -1;
  std::optional<BondOrder> order;  // stated at the opening digit, if any
};

// Parser snapshot for an incomplete prefix; enough to decide how to finish
// the string (probe construction) without re-deriving the grammar state.
struct PartialState {
  MolGraph graph;  // atoms and bonds placed so far
  int current_atom = -1;
  std::vector<int> branch_attach;       // branch-root atom per open '('
  bool innermost_branch_empty = false;  // last '(' not yet followed by an atom
  bool ring_digit_legal = false;        // a ring token may follow right now
  std::optional<BondOrder> pending_bond;
  std::vector<OpenRingInfo> open_rings;           // in opening order
  std::vector<std::optional<int>> explicit_h;     // bracket atoms only

  // Valence units already committed on an atom: bonds, the aromatic
  // adjustment, explicit hydrogens, and reservations for open rings.
  int committed_valence(int atom) const;
  int max_allowed_valence(int atom) const;
};

struct ParseResult {
  ParseStatus status = ParseStatus::kIrrecoverable;
  MolGraph graph;        // meaningful iff Complete
  std::string reason;    // diagnostic iff Irrecoverable
  PartialState partial;  // meaningful iff Incomplete

  bool complete() const { return status == ParseStatus::kComplete; }
  bool incomplete() const { return status == ParseStatus::kIncomplete; }
  bool irrecoverable() const { return status == ParseStatus::kIrrecoverable; }
};

ParseResult parse(std::span<const Token> tokens);

// tokenize + parse. Subset violations come back as Irrecoverable with the
// tokenizer's message rather than as an exception.
ParseResult parse_string(std::string_view smiles);

}  // namespace sigma::chem

#endif  // SIGMA_CHEM_PARSE_HPP
