//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/parse.hpp"

#include <algorithm>
#include <cctype>

namespace sigma::chem {

namespace {

BondOrder bond_order_of(char symbol) {
  switch (symbol) {
    case '-': return BondOrder::kSingle;
    case '=': return BondOrder::kDouble;
    case '#': return BondOrder::kTriple;
    case ':': return BondOrder::kAromatic;
  }
  return BondOrder::kSingle;
}

BondOrder default_order(const Atom& a, const Atom& b) {
  return (a.aromatic && b.aromatic) ? BondOrder::kAromatic : BondOrder::kSingle;
}

struct BracketSpec {
  Element element = Element::kC;
  bool aromatic = false;
  int h_count = 0;
  int charge = 0;
  bool wildcard = false;
};

// The tokenizer already validated the body; this just extracts the fields.
BracketSpec read_bracket(const std::string& text) {
  BracketSpec spec;
  std::string body = text.substr(1, text.size() - 2);
  if (body == "*") {
    spec.wildcard = true;
    spec.element = Element::kWildcard;
    return spec;
  }
  std::size_t i = 0;
  if (body.compare(0, 2, "Cl") == 0) {
    spec.element = Element::kCl;
    i = 2;
  } else if (body.compare(0, 2, "Br") == 0) {
    spec.element = Element::kBr;
    i = 2;
  } else {
    char c = body[0];
    spec.aromatic = std::islower(static_cast<unsigned char>(c)) != 0;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'B': spec.element = Element::kB; break;
      case 'C': spec.element = Element::kC; break;
      case 'N': spec.element = Element::kN; break;
      case 'O': spec.element = Element::kO; break;
      case 'P': spec.element = Element::kP; break;
      case 'S': spec.element = Element::kS; break;
      case 'F': spec.element = Element::kF; break;
      case 'I': spec.element = Element::kI; break;
    }
    i = 1;
  }
  if (i < body.size() && body[i] == 'H') {
    ++i;
    std::size_t start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
      ++i;
    spec.h_count = (i == start) ? 1 : std::stoi(body.substr(start, i - start));
  }
  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    char sign = body[i];
    int unit = sign == '+' ? 1 : -1;
    std::size_t start = i;
    ++i;
    while (i < body.size() && body[i] == sign) ++i;
    int magnitude = static_cast<int>(i - start);
    if (magnitude == 1 && i < body.size() &&
        std::isdigit(static_cast<unsigned char>(body[i]))) {
      std::size_t dstart = i;
      while (i < body.size() &&
             std::isdigit(static_cast<unsigned char>(body[i])))
        ++i;
      magnitude = std::stoi(body.substr(dstart, i - dstart));
    }
    spec.charge = unit * magnitude;
  }
  return spec;
}

Element element_of_symbol(const std::string& text, bool* aromatic) {
  *aromatic = std::islower(static_cast<unsigned char>(text[0])) != 0;
  if (text == "Cl") return Element::kCl;
  if (text == "Br") return Element::kBr;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'B': return Element::kB;
    case 'C': return Element::kC;
    case 'N': return Element::kN;
    case 'O': return Element::kO;
    case 'P': return Element::kP;
    case 'S': return Element::kS;
    case 'F': return Element::kF;
    case 'I': return Element::kI;
  }
  return Element::kC;
}

// Grammar positions. Ring digits bind to the most recent atom and must come
// before any branch from it (OpenSMILES ordering).
enum class Fsm {
  kStart,
  kAfterAtom,         // ring digits allowed
  kAfterBranchClose,  // ring digits not allowed
  kAfterBranchOpen,
  kAfterBond,
};

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  ParseResult run() {
    for (const Token& tok : tokens_) {
      if (!step(tok)) {
        ParseResult r;
        r.status = ParseStatus::kIrrecoverable;
        r.reason = reason_;
        return r;
      }
    }
    return classify_end();
  }

 private:
  std::span<const Token> tokens_;
  PartialState st_;
  Fsm fsm_ = Fsm::kStart;
  bool ring_ok_before_bond_ = false;
  std::vector<int> branch_atom_count_;  // graph size at each '('
  std::string reason_;

  bool fail(const Token& tok, const std::string& what) {
    reason_ = what + " at position " + std::to_string(tok.position);
    return false;
  }

  int max_allowed(int atom) const { return st_.max_allowed_valence(atom); }

  int committed(int atom) const { return st_.committed_valence(atom); }

  bool add_atom(const Token& tok) {
    Atom a;
    std::optional<int> expl_h;
    if (tok.kind == TokenKind::kAtom || tok.kind == TokenKind::kAromaticAtom) {
      bool arom = false;
      a.element = element_of_symbol(tok.text, &arom);
      a.aromatic = arom;
    } else {
      BracketSpec spec = read_bracket(tok.text);
      a.element = spec.element;
      a.aromatic = spec.aromatic;
      a.formal_charge = spec.charge;
      a.is_anchor = spec.wildcard;
      expl_h = spec.h_count;
    }
    if (allowed_valences(a.element, a.formal_charge).empty()) {
      return fail(tok, "no legal valence for charged atom");
    }
    if (a.is_anchor && st_.graph.anchor_count() >= 1) {
      return fail(tok, "more than one anchor atom");
    }

    int prev = st_.current_atom;
    int idx = st_.graph.add_atom(a);
    st_.explicit_h.push_back(expl_h);

    if (prev >= 0) {
      BondOrder order = st_.pending_bond
                            ? *st_.pending_bond
                            : default_order(st_.graph.atom(prev), a);
      st_.pending_bond.reset();
      int contrib = bond_valence_contribution(order);
      if (committed(prev) + contrib > max_allowed(prev)) {
        return fail(tok, "valence overflow");
      }
      st_.graph.add_bond(prev, idx, order);
      if (committed(idx) > max_allowed(idx)) {
        return fail(tok, "valence overflow");
      }
    } else if (committed(idx) > max_allowed(idx)) {
      return fail(tok, "valence overflow");
    }
    st_.current_atom = idx;
    if (!st_.branch_attach.empty()) st_.innermost_branch_empty = false;
    fsm_ = Fsm::kAfterAtom;
    return true;
  }

  bool handle_ring(const Token& tok) {
    bool ring_position = fsm_ == Fsm::kAfterAtom ||
                         (fsm_ == Fsm::kAfterBond && ring_ok_before_bond_);
    if (!ring_position || st_.current_atom < 0) {
      return fail(tok, "ring closure must directly follow an atom");
    }
    int number = tok.kind == TokenKind::kRingDigit
                     ? tok.text[0] - '0'
                     : std::stoi(tok.text.substr(1));
    std::optional<BondOrder> stated = st_.pending_bond;
    st_.pending_bond.reset();

    auto it = std::find_if(st_.open_rings.begin(), st_.open_rings.end(),
                           [&](const OpenRingInfo& r) { return r.number == number; });
    if (it == st_.open_rings.end()) {
      // opening
      int reserve = stated ? bond_valence_contribution(*stated) : 1;
      if (committed(st_.current_atom) + reserve > max_allowed(st_.current_atom)) {
        return fail(tok, "valence overflow");
      }
      st_.open_rings.push_back({number, st_.current_atom, stated});
      fsm_ = Fsm::kAfterAtom;
      return true;
    }
    // closing
    OpenRingInfo open = *it;
    if (open.atom == st_.current_atom) {
      return fail(tok, "ring digit " + std::to_string(number) +
                           " reused illegally (self-bond)");
    }
    if (st_.graph.has_bond(open.atom, st_.current_atom)) {
      return fail(tok, "ring digit " + std::to_string(number) +
                           " reused illegally (duplicate bond)");
    }
    if (open.order && stated && *open.order != *stated) {
      return fail(tok, "ring bond order mismatch");
    }
    BondOrder order =
        open.order ? *open.order
                   : (stated ? *stated
                             : default_order(st_.graph.atom(open.atom),
                                             st_.graph.atom(st_.current_atom)));
    st_.open_rings.erase(it);  // releases the reservation on open.atom
    int contrib = bond_valence_contribution(order);
    if (committed(open.atom) + contrib > max_allowed(open.atom) ||
        committed(st_.current_atom) + contrib > max_allowed(st_.current_atom)) {
      return fail(tok, "valence overflow");
    }
    st_.graph.add_bond(open.atom, st_.current_atom, order);
    fsm_ = Fsm::kAfterAtom;
    return true;
  }

  bool step(const Token& tok) {
    switch (tok.kind) {
      case TokenKind::kAtom:
      case TokenKind::kAromaticAtom:
      case TokenKind::kBracketAtom:
      case TokenKind::kWildcardAnchor:
        if (fsm_ == Fsm::kAfterBranchClose || fsm_ == Fsm::kAfterAtom ||
            fsm_ == Fsm::kStart || fsm_ == Fsm::kAfterBond ||
            fsm_ == Fsm::kAfterBranchOpen) {
          return add_atom(tok);
        }
        return fail(tok, "unexpected atom");

      case TokenKind::kBond: {
        if (st_.current_atom < 0) return fail(tok, "bond before any atom");
        if (fsm_ == Fsm::kAfterBond) return fail(tok, "two bond symbols in a row");
        BondOrder order = bond_order_of(tok.text[0]);
        int contrib = bond_valence_contribution(order);
        if (committed(st_.current_atom) + contrib > max_allowed(st_.current_atom)) {
          return fail(tok, "valence overflow");
        }
        ring_ok_before_bond_ = fsm_ == Fsm::kAfterAtom;
        st_.pending_bond = order;
        fsm_ = Fsm::kAfterBond;
        return true;
      }

      case TokenKind::kBranchOpen:
        if (st_.current_atom < 0) return fail(tok, "branch before any atom");
        if (fsm_ == Fsm::kAfterBond) return fail(tok, "bond before branch open");
        st_.branch_attach.push_back(st_.current_atom);
        branch_atom_count_.push_back(st_.graph.atom_count());
        st_.innermost_branch_empty = true;
        fsm_ = Fsm::kAfterBranchOpen;
        return true;

      case TokenKind::kBranchClose: {
        if (st_.branch_attach.empty()) return fail(tok, "unmatched branch close");
        if (fsm_ == Fsm::kAfterBond) return fail(tok, "dangling bond before ')'");
        if (st_.graph.atom_count() == branch_atom_count_.back()) {
          return fail(tok, "empty branch");
        }
        st_.current_atom = st_.branch_attach.back();
        st_.branch_attach.pop_back();
        branch_atom_count_.pop_back();
        st_.innermost_branch_empty =
            !st_.branch_attach.empty() &&
            st_.graph.atom_count() == branch_atom_count_.back();
        fsm_ = Fsm::kAfterBranchClose;
        return true;
      }

      case TokenKind::kRingDigit:
      case TokenKind::kRingPercent:
        return handle_ring(tok);
    }
    return fail(tok, "unhandled token");
  }

  ParseResult classify_end() {
    ParseResult r;
    bool open_constructs = !st_.branch_attach.empty() || !st_.open_rings.empty() ||
                           st_.pending_bond.has_value() ||
                           fsm_ == Fsm::kAfterBranchOpen ||
                           st_.current_atom < 0;
    bool needs_extension = false;

    for (int i = 0; i < st_.graph.atom_count(); ++i) {
      if (!st_.explicit_h[i].has_value()) continue;  // implicit H always lands
      int total = st_.committed_valence(i);
      std::vector<int> allowed = allowed_valences(st_.graph.atom(i).element,
                                                  st_.graph.atom(i).formal_charge);
      if (std::find(allowed.begin(), allowed.end(), total) != allowed.end()) {
        continue;
      }
      bool extensible =
          i == st_.current_atom ||
          std::find(st_.branch_attach.begin(), st_.branch_attach.end(), i) !=
              st_.branch_attach.end() ||
          std::any_of(st_.open_rings.begin(), st_.open_rings.end(),
                      [&](const OpenRingInfo& ring) { return ring.atom == i; });
      bool reachable = !allowed.empty() && total < allowed.back();
      if (extensible && reachable) {
        needs_extension = true;
      } else {
        r.status = ParseStatus::kIrrecoverable;
        r.reason = "atom " + std::to_string(i) +
                   " cannot reach a legal valence as written";
        return r;
      }
    }

    if (open_constructs || needs_extension) {
      r.status = ParseStatus::kIncomplete;
      st_.ring_digit_legal = fsm_ == Fsm::kAfterAtom;
      r.partial = std::move(st_);
      return r;
    }
    r.status = ParseStatus::kComplete;
    r.graph = std::move(st_.graph);
    return r;
  }
};

}  // namespace

int PartialState::committed_valence(int atom) const {
  int total = used_valence(graph, atom);
  if (explicit_h.size() > static_cast<std::size_t>(atom) && explicit_h[atom]) {
    total += *explicit_h[atom];
  }
  for (const OpenRingInfo& ring : open_rings) {
    if (ring.atom == atom) {
      total += ring.order ? bond_valence_contribution(*ring.order) : 1;
    }
  }
  return total;
}

int PartialState::max_allowed_valence(int atom) const {
  const Atom& a = graph.atom(atom);
  std::vector<int> allowed = allowed_valences(a.element, a.formal_charge);
  return allowed.empty() ? -1 : allowed.back();
}

ParseResult parse(std::span<const Token> tokens) {
  return Parser(tokens).run();
}

ParseResult parse_string(std::string_view smiles) {
  try {
    std::vector<Token> tokens = tokenize(smiles);
    return parse(tokens);
  } catch (const SubsetError& e) {
    ParseResult r;
    r.status = ParseStatus::kIrrecoverable;
    r.reason = e.what();
    return r;
  }
}

}  // namespace sigma::chem
