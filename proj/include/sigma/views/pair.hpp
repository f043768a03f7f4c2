//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_VIEWS_PAIR_HPP
#define SIGMA_VIEWS_PAIR_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigma/chem/mol_graph.hpp"
#include "sigma/chem/write.hpp"
#include "sigma/util/rng.hpp"

namespace sigma::views {

// A verified functionally-equivalent view pair: two distinct prefix
// serializations of one partitioned subgraph that share a byte-identical
// suffix and reconstruct the same parent molecule.
struct ViewPair {
  std::string prefix_u;  // canonically ordered, anchor-last
  std::string prefix_v;  // randomized traversal, anchor-last
  std::string suffix;
  std::optional<std::string> probe;  // completion for prefix_u, when needed
  chem::CanonicalKey parent_key;
  std::string source_id;
};

enum class ViewErrorKind {
  kNoCuttableBond,
  kRetriesExhausted,
};

class ViewError : public std::runtime_error {
 public:
  ViewError(ViewErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind(kind) {}
  ViewErrorKind kind;
};

// Samples one cuttable bond uniformly and builds a verified pair.
// Throws ViewError when no bond is cuttable or when `retry_budget`
// randomized traversals never diverge from the canonical view.
ViewPair make_views(const chem::MolGraph& g, util::RandomEngine& rng,
                    int retry_budget = 16);

// Same, but at a caller-chosen cut (mining with cut enumeration).
ViewPair make_views_at(const chem::MolGraph& g, int bond,
                       util::RandomEngine& rng, int retry_budget = 16);

// Appends the deterministic completion: direct closures for open rings,
// ')' for open branches, methyl caps for pending bonds and under-valent
// bracket atoms. Complete prefixes come back unchanged.
// Throws std::invalid_argument on irrecoverable prefixes.
std::string probe_complete(const std::string& prefix);

enum class VerifyReason {
  kOk,
  kDivergenceViolated,  // prefix_u == prefix_v
  kParseUFailed,        // prefix_u + suffix does not parse Complete
  kParseVFailed,
  kKeyMismatch,  // keys of the two concatenations and parent disagree
};

struct VerifyOutcome {
  bool ok = false;
  VerifyReason reason = VerifyReason::kOk;
};

// Re-checks the dual consistency condition from the raw strings alone.
VerifyOutcome verify_pair(const ViewPair& p);

// In-batch structural negatives for one anchor pair. Exactly `count`
// entries; entries that are unusable (or padding beyond the candidate pool)
// have usable = false.
struct NegativeSet {
  std::vector<std::string> prefixes;
  std::vector<char> usable;

  int usable_count() const;
};

NegativeSet sample_negatives(std::span<const ViewPair> batch, int anchor_index,
                             int count, util::RandomEngine& rng);

}  // namespace sigma::views

#endif  // SIGMA_VIEWS_PAIR_HPP
