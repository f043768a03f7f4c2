//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/views/pair.hpp"

#include <algorithm>
#include <cstdio>

#include "sigma/chem/parse.hpp"
#include "sigma/views/partition.hpp"

namespace sigma::views {

using chem::MolGraph;
using chem::ParseResult;
using chem::PartialState;

namespace {

int bounded(util::RandomEngine& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

std::string ring_token_text(int number) {
  if (number <= 9) return std::to_string(number);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%%%02d", number % 100);
  return std::string(buf);
}

}  // namespace

ViewPair make_views_at(const chem::MolGraph& g, int bond,
                       util::RandomEngine& rng, int retry_budget) {
  PartitionedMol part = partition(g, bond);

  ViewPair pair;
  pair.parent_key = part.parent_key;
  pair.suffix = (part.cut_endpoints_aromatic ? "-" : "") +
                chem::write_suffix_view(part.suffix_graph);
  pair.prefix_u = chem::write_prefix_view_canonical(part.prefix_graph);

  bool diverged = false;
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    pair.prefix_v = chem::write_prefix_view_random(part.prefix_graph, rng);
    if (pair.prefix_v != pair.prefix_u) {
      diverged = true;
      break;
    }
  }
  if (!diverged) {
    throw ViewError(ViewErrorKind::kRetriesExhausted,
                    "randomized traversals never diverged from the canonical "
                    "view within the retry budget");
  }

  ParseResult pu = chem::parse_string(pair.prefix_u);
  if (pu.incomplete()) {
    std::string completed = probe_complete(pair.prefix_u);
    pair.probe = completed.substr(pair.prefix_u.size());
  }

  VerifyOutcome check = verify_pair(pair);
  if (!check.ok) {
    throw std::logic_error("constructed view pair failed verification (reason " +
                           std::to_string(static_cast<int>(check.reason)) + ")");
  }
  return pair;
}

ViewPair make_views(const chem::MolGraph& g, util::RandomEngine& rng,
                    int retry_budget) {
  std::vector<int> bonds = cuttable_bonds(g);
  if (bonds.empty()) {
    throw ViewError(ViewErrorKind::kNoCuttableBond, "molecule has no cuttable bond");
  }
  int bond = bonds[bounded(rng, static_cast<int>(bonds.size()))];
  return make_views_at(g, bond, rng, retry_budget);
}

std::string probe_complete(const std::string& prefix) {
  ParseResult first = chem::parse_string(prefix);
  if (first.irrecoverable()) {
    throw std::invalid_argument("irrecoverable prefix: " + first.reason);
  }
  std::string s = prefix;
  // Each appended token strictly reduces open work, so this converges fast;
  // the guard only trips on inputs no methyl/closure sequence can fix.
  for (int guard = 0; guard < 4096; ++guard) {
    ParseResult r = chem::parse_string(s);
    if (r.complete()) return s;
    if (r.irrecoverable()) break;
    const PartialState& st = r.partial;
    if (st.pending_bond) {
      s += "C";
      continue;
    }
    if (!st.open_rings.empty()) {
      const chem::OpenRingInfo& ring = st.open_rings.front();
      int cur = st.current_atom;
      int contrib =
          ring.order ? chem::bond_valence_contribution(*ring.order) : 1;
      bool can_close = st.ring_digit_legal && cur >= 0 && cur != ring.atom &&
                       !st.graph.has_bond(ring.atom, cur) &&
                       st.committed_valence(cur) + contrib <=
                           st.max_allowed_valence(cur);
      s += can_close ? ring_token_text(ring.number) : "C";
      continue;
    }
    if (!st.branch_attach.empty()) {
      s += st.innermost_branch_empty ? "C" : ")";
      continue;
    }
    s += "C";  // under-valent bracket attachment atom
  }
  throw std::invalid_argument(
      "prefix cannot be completed by ring closures and methyl caps");
}

VerifyOutcome verify_pair(const ViewPair& p) {
  if (p.prefix_u == p.prefix_v) {
    return {false, VerifyReason::kDivergenceViolated};
  }
  ParseResult ru = chem::parse_string(p.prefix_u + p.suffix);
  if (!ru.complete()) return {false, VerifyReason::kParseUFailed};
  ParseResult rv = chem::parse_string(p.prefix_v + p.suffix);
  if (!rv.complete()) return {false, VerifyReason::kParseVFailed};
  chem::CanonicalKey ku = chem::canonical_key(ru.graph);
  chem::CanonicalKey kv = chem::canonical_key(rv.graph);
  if (ku != kv || ku != p.parent_key) {
    return {false, VerifyReason::kKeyMismatch};
  }
  return {true, VerifyReason::kOk};
}

int NegativeSet::usable_count() const {
  return static_cast<int>(std::count(usable.begin(), usable.end(), 1));
}

NegativeSet sample_negatives(std::span<const ViewPair> batch, int anchor_index,
                             int count, util::RandomEngine& rng) {
  if (batch.empty()) {
    throw std::invalid_argument("sample_negatives needs a non-empty batch");
  }
  const ViewPair& anchor = batch[anchor_index];

  std::vector<const std::string*> pool;
  for (int j = 0; j < static_cast<int>(batch.size()); ++j) {
    if (j == anchor_index) continue;
    pool.push_back(&batch[j].prefix_u);
    pool.push_back(&batch[j].prefix_v);
  }
  // Partial Fisher-Yates: the first `take` entries are a uniform sample.
  int take = std::min<int>(count, static_cast<int>(pool.size()));
  for (int i = 0; i < take; ++i) {
    int j = i + bounded(rng, static_cast<int>(pool.size()) - i);
    std::swap(pool[i], pool[j]);
  }

  NegativeSet out;
  out.prefixes.assign(static_cast<std::size_t>(count), "");
  out.usable.assign(static_cast<std::size_t>(count), 0);
  for (int i = 0; i < take; ++i) {
    out.prefixes[i] = *pool[i];
    ParseResult r = chem::parse_string(out.prefixes[i] + anchor.suffix);
    if (!r.complete()) continue;
    if (chem::canonical_key(r.graph) == anchor.parent_key) continue;
    out.usable[i] = 1;
  }
  return out;
}

}  // namespace sigma::views
