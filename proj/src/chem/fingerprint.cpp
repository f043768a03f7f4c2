//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/chem/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "sigma/util/hash.hpp"

namespace sigma::chem {

int Fingerprint::popcount() const {
  int n = 0;
  for (std::uint64_t w : words) n += std::popcount(w);
  return n;
}

Fingerprint circular_fingerprint(const MolGraph& g, int radius, int nbits) {
  if (nbits <= 0 || radius < 0) {
    throw std::invalid_argument("fingerprint radius/nbits out of range");
  }
  Fingerprint fp;
  fp.nbits = nbits;
  fp.radius = radius;
  fp.words.assign((nbits + 63) / 64, 0);

  int n = g.atom_count();
  std::vector<std::uint64_t> inv(n);
  for (int i = 0; i < n; ++i) {
    const Atom& a = g.atom(i);
    std::uint64_t h = util::mix64(static_cast<std::uint64_t>(a.element) + 1);
    h = util::hash_combine(h, a.aromatic ? 2 : 1);
    h = util::hash_combine(h, static_cast<std::uint64_t>(a.formal_charge + 16));
    h = util::hash_combine(h, a.is_anchor ? 2 : 1);
    h = util::hash_combine(h, static_cast<std::uint64_t>(g.degree(i)));
    inv[i] = h;
  }

  for (int r = 0; r <= radius; ++r) {
    for (int i = 0; i < n; ++i) {
      fp.set(static_cast<int>(inv[i] % static_cast<std::uint64_t>(nbits)));
    }
    if (r == radius) break;
    std::vector<std::uint64_t> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint64_t> env;
      for (const MolGraph::Neighbor& nb : g.neighbors(i)) {
        std::uint64_t e = util::mix64(
            static_cast<std::uint64_t>(g.bond(nb.bond).order));
        env.push_back(util::hash_combine(e, inv[nb.atom]));
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = util::hash_combine(util::mix64(r + 1), inv[i]);
      for (std::uint64_t e : env) h = util::hash_combine(h, e);
      next[i] = h;
    }
    inv = std::move(next);
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.nbits != b.nbits) {
    throw std::invalid_argument("fingerprint width mismatch");
  }
  int inter = 0;
  int uni = 0;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    inter += std::popcount(a.words[i] & b.words[i]);
    uni += std::popcount(a.words[i] | b.words[i]);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace sigma::chem
