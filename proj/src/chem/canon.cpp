//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/canon.hpp"

#include <algorithm>
#include <numeric>

namespace sigma::chem {

namespace {

// Dense-ranks arbitrary comparable keys: equal keys share a rank, ranks are
// 0..k-1 in key order.
std::vector<int> dense_rank(const std::vector<std::vector<int>>& keys) {
  int n = static_cast<int>(keys.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(n, 0);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keys[idx[i]] != keys[idx[i - 1]]) ++r;
    ranks[idx[i]] = r;
  }
  return ranks;
}

int rank_count(const std::vector<int>& ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

std::vector<int> refine_step(const MolGraph& g, const std::vector<int>& ranks) {
  int n = g.atom_count();
  std::vector<std::vector<int>> keys(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int>& k = keys[i];
    k.push_back(ranks[i]);
    std::vector<std::pair<int, int>> nbs;
    for (const MolGraph::Neighbor& nb : g.neighbors(i)) {
      nbs.emplace_back(static_cast<int>(g.bond(nb.bond).order), ranks[nb.atom]);
    }
    std::sort(nbs.begin(), nbs.end());
    for (const auto& [order, r] : nbs) {
      k.push_back(order);
      k.push_back(r);
    }
  }
  return dense_rank(keys);
}

}  // namespace

std::vector<int> refined_ranks(const MolGraph& g) {
  int n = g.atom_count();
  std::vector<std::vector<int>> keys(n);
  for (int i = 0; i < n; ++i) {
    const Atom& a = g.atom(i);
    std::vector<int>& k = keys[i];
    k.push_back(static_cast<int>(a.element));
    k.push_back(a.aromatic ? 1 : 0);
    k.push_back(a.formal_charge + 16);
    k.push_back(a.is_anchor ? 1 : 0);
    k.push_back(g.degree(i));
    std::vector<int> orders;
    for (const MolGraph::Neighbor& nb : g.neighbors(i)) {
      orders.push_back(static_cast<int>(g.bond(nb.bond).order));
    }
    std::sort(orders.begin(), orders.end());
    k.insert(k.end(), orders.begin(), orders.end());
  }
  return refine_from_seed(g, dense_rank(keys));
}

std::vector<int> refine_from_seed(const MolGraph& g, std::vector<int> seed) {
  int classes = rank_count(seed);
  while (true) {
    std::vector<int> next = refine_step(g, seed);
    int next_classes = rank_count(next);
    if (next_classes == classes) return next;
    classes = next_classes;
    seed = std::move(next);
  }
}

bool ranks_discrete(const std::vector<int>& ranks) {
  return rank_count(ranks) == static_cast<int>(ranks.size());
}

}  // namespace sigma::chem
