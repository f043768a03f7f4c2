//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/write.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sigma/chem/canon.hpp"

namespace sigma::chem {

namespace {

// Unbiased-enough bounded draw with a pinned algorithm, so seeded output is
// identical across standard libraries.
int bounded(util::RandomEngine& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

template <typename T>
void shuffle_fixed(std::vector<T>& v, util::RandomEngine& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    std::swap(v[i], v[bounded(rng, i + 1)]);
  }
}

// Child-selection policy for the DFS tree build. Returns an index into
// `candidates`.
using Chooser = std::function<int(const std::vector<int>& candidates)>;

struct DfsTree {
  int root = -1;
  std::vector<std::vector<MolGraph::Neighbor>> children;  // ordered
  std::vector<char> bond_in_tree;
};

// Is `target` reachable from `from` through unvisited atoms only?
bool reaches_unvisited(const MolGraph& g, int from, int target,
                       const std::vector<char>& visited) {
  if (from == target) return true;
  std::vector<char> seen(g.atom_count(), 0);
  std::queue<int> q;
  q.push(from);
  seen[from] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const MolGraph::Neighbor& nb : g.neighbors(u)) {
      if (nb.atom == target) return true;
      if (!visited[nb.atom] && !seen[nb.atom]) {
        seen[nb.atom] = 1;
        q.push(nb.atom);
      }
    }
  }
  return false;
}

// Builds the DFS tree. When `delayed_target` >= 0, every node explores the
// subtree containing the target last, which makes the target the final atom
// in preorder (used for anchor-last prefix views). Non-tree edges become
// ring-closure bonds.
DfsTree build_tree(const MolGraph& g, int root, const Chooser& choose,
                   int delayed_target) {
  DfsTree tree;
  tree.root = root;
  tree.children.resize(g.atom_count());
  tree.bond_in_tree.assign(g.bond_count(), 0);
  std::vector<char> visited(g.atom_count(), 0);
  visited[root] = 1;

  // Explicit stack to avoid deep recursion on long chains.
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int u = stack.back();
    std::vector<int> cand;
    for (const MolGraph::Neighbor& nb : g.neighbors(u)) {
      if (!visited[nb.atom]) cand.push_back(nb.atom);
    }
    if (cand.empty()) {
      stack.pop_back();
      continue;
    }
    int next = -1;
    if (delayed_target >= 0) {
      std::vector<int> plain;
      std::vector<int> reaching;
      for (int c : cand) {
        if (c == delayed_target ||
            reaches_unvisited(g, c, delayed_target, visited)) {
          reaching.push_back(c);
        } else {
          plain.push_back(c);
        }
      }
      next = !plain.empty() ? plain[choose(plain)] : reaching[choose(reaching)];
    } else {
      next = cand[choose(cand)];
    }
    visited[next] = 1;
    int bond = g.bond_between(u, next);
    tree.children[u].push_back({next, bond});
    tree.bond_in_tree[bond] = 1;
    stack.push_back(next);
  }
  return tree;
}

std::string charge_suffix(int q) {
  if (q == 0) return "";
  std::string s(1, q > 0 ? '+' : '-');
  int mag = q > 0 ? q : -q;
  if (mag > 1) s += std::to_string(mag);
  return s;
}

std::string atom_text(const MolGraph& g, int atom) {
  const Atom& a = g.atom(atom);
  if (a.is_anchor) return "[*]";
  std::string sym = element_symbol(a.element);
  if (a.aromatic) {
    for (char& c : sym) c = static_cast<char>(std::tolower(c));
  }
  if (a.formal_charge == 0) return sym;
  std::optional<int> h = implicit_hydrogens(g, atom);
  if (!h) throw std::invalid_argument("atom violates the valence table");
  std::string out = "[" + sym;
  if (*h == 1) out += "H";
  if (*h > 1) out += "H" + std::to_string(*h);
  out += charge_suffix(a.formal_charge) + "]";
  return out;
}

// Explicit bond symbol, or "" when the parser's default for this atom pair
// reproduces the order.
std::string bond_text(const MolGraph& g, const Bond& b) {
  bool both_aromatic = g.atom(b.a).aromatic && g.atom(b.b).aromatic;
  switch (b.order) {
    case BondOrder::kSingle: return both_aromatic ? "-" : "";
    case BondOrder::kAromatic: return both_aromatic ? "" : ":";
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
  }
  return "";
}

class Emitter {
 public:
  Emitter(const MolGraph& g, const DfsTree& tree) : g_(g), tree_(tree) {
    preorder_index_.assign(g.atom_count(), -1);
    compute_preorder();
    collect_ring_bonds();
  }

  std::string emit() {
    digit_of_bond_.assign(g_.bond_count(), 0);
    digit_in_use_.assign(100, 0);
    out_.clear();
    emit_subtree(tree_.root);
    return out_;
  }

 private:
  const MolGraph& g_;
  const DfsTree& tree_;
  std::vector<int> preorder_index_;
  std::vector<std::vector<int>> ring_open_;   // atom -> ring bond ids opening here
  std::vector<std::vector<int>> ring_close_;  // atom -> ring bond ids closing here
  std::vector<int> digit_of_bond_;
  std::vector<char> digit_in_use_;
  std::string out_;

  void compute_preorder() {
    int counter = 0;
    std::vector<int> stack{tree_.root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      preorder_index_[u] = counter++;
      const auto& kids = tree_.children[u];
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        stack.push_back(it->atom);
      }
    }
  }

  void collect_ring_bonds() {
    ring_open_.assign(g_.atom_count(), {});
    ring_close_.assign(g_.atom_count(), {});
    for (int b = 0; b < g_.bond_count(); ++b) {
      if (tree_.bond_in_tree[b]) continue;
      const Bond& bond = g_.bond(b);
      int first = preorder_index_[bond.a] < preorder_index_[bond.b] ? bond.a : bond.b;
      int second = bond.other(first);
      ring_open_[first].push_back(b);
      ring_close_[second].push_back(b);
    }
    auto by_partner_preorder = [&](int atom) {
      return [&, atom](int b1, int b2) {
        int p1 = preorder_index_[g_.bond(b1).other(atom)];
        int p2 = preorder_index_[g_.bond(b2).other(atom)];
        return p1 < p2;
      };
    };
    for (int a = 0; a < g_.atom_count(); ++a) {
      std::sort(ring_open_[a].begin(), ring_open_[a].end(), by_partner_preorder(a));
      std::sort(ring_close_[a].begin(), ring_close_[a].end(), by_partner_preorder(a));
    }
  }

  std::string digit_text(int d) {
    return d <= 9 ? std::to_string(d) : "%" + std::to_string(d);
  }

  int claim_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!digit_in_use_[d]) {
        digit_in_use_[d] = 1;
        return d;
      }
    }
    throw std::runtime_error("more than 99 simultaneously open ring closures");
  }

  void emit_subtree(int root) {
    // Iterative emission: frames carry the child cursor.
    struct Frame {
      int atom;
      std::size_t next_child = 0;
      bool parenthesized = false;
    };
    std::vector<Frame> stack;
    stack.push_back({root});
    emit_atom(root);
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& kids = tree_.children[f.atom];
      if (f.next_child >= kids.size()) {
        if (f.parenthesized) out_ += ")";
        stack.pop_back();
        continue;
      }
      MolGraph::Neighbor kid = kids[f.next_child];
      bool last = f.next_child + 1 == kids.size();
      ++f.next_child;
      if (!last) out_ += "(";
      out_ += bond_text(g_, g_.bond(kid.bond));
      emit_atom(kid.atom);
      stack.push_back({kid.atom, 0, !last});
    }
  }

  void emit_atom(int atom) {
    out_ += atom_text(g_, atom);
    for (int b : ring_close_[atom]) {
      int d = digit_of_bond_[b];
      out_ += digit_text(d);
      digit_in_use_[d] = 0;
    }
    for (int b : ring_open_[atom]) {
      int d = claim_digit();
      digit_of_bond_[b] = d;
      out_ += bond_text(g_, g_.bond(b));
      out_ += digit_text(d);
    }
  }
};

std::string serialize(const MolGraph& g, int root, const Chooser& choose,
                      int delayed_target = -1) {
  DfsTree tree = build_tree(g, root, choose, delayed_target);
  return Emitter(g, tree).emit();
}

// Deterministic serialization guided by (rank, atom index).
std::string serialize_ranked(const MolGraph& g, const std::vector<int>& ranks,
                             int root, int delayed_target = -1) {
  Chooser choose = [&](const std::vector<int>& cand) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(cand.size()); ++i) {
      if (std::make_pair(ranks[cand[i]], cand[i]) <
          std::make_pair(ranks[cand[best]], cand[best])) {
        best = i;
      }
    }
    return best;
  };
  return serialize(g, root, choose, delayed_target);
}

int min_rank_atom(const std::vector<int>& ranks) {
  return static_cast<int>(
      std::min_element(ranks.begin(), ranks.end()) - ranks.begin());
}

// Canonicalization: refine; if atoms still tie, individualize each member of
// the lowest tied class in turn and keep the lexicographically smallest
// serialization. Correct (isomorphism-invariant) because the class choice is
// rank-based and every member is tried.
std::string canonical_search(const MolGraph& g, const std::vector<int>& ranks) {
  if (ranks_discrete(ranks)) {
    return serialize_ranked(g, ranks, min_rank_atom(ranks));
  }
  int n = g.atom_count();
  std::vector<int> class_size(n, 0);
  for (int r : ranks) ++class_size[r];
  int target_rank = -1;
  for (int r = 0; r < n; ++r) {
    if (class_size[r] > 1) {
      target_rank = r;
      break;
    }
  }
  std::string best;
  for (int a = 0; a < n; ++a) {
    if (ranks[a] != target_rank) continue;
    std::vector<int> seed(n);
    for (int i = 0; i < n; ++i) seed[i] = 2 * ranks[i] + 1;
    seed[a] -= 1;
    std::string s = canonical_search(g, refine_from_seed(g, seed));
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

int require_single_anchor(const MolGraph& g) {
  if (g.anchor_count() != 1) {
    throw std::invalid_argument("graph must carry exactly one anchor atom");
  }
  return g.anchor_atom();
}

std::string strip_prefix_anchor(std::string s) {
  if (s.size() < 3 || s.compare(s.size() - 3, 3, "[*]") != 0) {
    throw std::logic_error("anchor-last serialization did not end with [*]");
  }
  s.erase(s.size() - 3);
  return s;
}

}  // namespace

std::string write_canonical(const MolGraph& g) {
  if (g.atom_count() == 0) {
    throw std::invalid_argument("cannot serialize an empty graph");
  }
  return canonical_search(g, refined_ranks(g));
}

CanonicalKey canonical_key(const MolGraph& g) {
  return CanonicalKey{write_canonical(g)};
}

std::string write_random(const MolGraph& g, util::RandomEngine& rng,
                         std::optional<int> root) {
  if (g.atom_count() == 0) {
    throw std::invalid_argument("cannot serialize an empty graph");
  }
  if (root && (*root < 0 || *root >= g.atom_count())) {
    throw std::out_of_range("root atom index out of range");
  }
  int r = root ? *root : bounded(rng, g.atom_count());
  Chooser choose = [&rng](const std::vector<int>& cand) {
    return bounded(rng, static_cast<int>(cand.size()));
  };
  return serialize(g, r, choose);
}

std::string write_prefix_view_canonical(const MolGraph& g) {
  int anchor = require_single_anchor(g);
  std::vector<int> ranks = refined_ranks(g);
  int root = -1;
  for (int i = 0; i < g.atom_count(); ++i) {
    if (i == anchor) continue;
    if (root < 0 || std::make_pair(ranks[i], i) < std::make_pair(ranks[root], root)) {
      root = i;
    }
  }
  return strip_prefix_anchor(serialize_ranked(g, ranks, root, anchor));
}

std::string write_prefix_view_random(const MolGraph& g, util::RandomEngine& rng) {
  int anchor = require_single_anchor(g);
  std::vector<int> non_anchor;
  for (int i = 0; i < g.atom_count(); ++i) {
    if (i != anchor) non_anchor.push_back(i);
  }
  int root = non_anchor[bounded(rng, static_cast<int>(non_anchor.size()))];
  Chooser choose = [&rng](const std::vector<int>& cand) {
    return bounded(rng, static_cast<int>(cand.size()));
  };
  return strip_prefix_anchor(serialize(g, root, choose, anchor));
}

std::string write_suffix_view(const MolGraph& g) {
  int anchor = require_single_anchor(g);
  std::vector<int> ranks = refined_ranks(g);
  std::string s = serialize_ranked(g, ranks, anchor);
  if (s.compare(0, 3, "[*]") != 0) {
    throw std::logic_error("anchor-rooted serialization did not start with [*]");
  }
  return s.substr(3);
}

}  // namespace sigma::chem
