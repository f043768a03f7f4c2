//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_METRICS_METRICS_HPP
#define SIGMA_METRICS_METRICS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sigma/metrics/genset.hpp"
#include "sigma/model/net.hpp"

namespace sigma::metrics {

// Ratio helpers return {value, warning}; warning is set when the set is
// empty and the ratio is defined as 0.
struct Ratio {
  double value = 0.0;
  bool empty_warning = false;
};

// Fraction of raw strings that parse Complete.
Ratio validity(const GenSet& g);

// |unique(valid)| / |valid|; identity via CanonicalKey.
Ratio uniqueness(const GenSet& g);

// Multiset formula: |{m in valid : key(m) not in train}| / |valid|.
// `unique_variant` output instead uses the distinct valid keys as the
// denominator and numerator base.
Ratio novelty(const GenSet& g, std::span<const std::string> train_keys,
              double* unique_variant = nullptr);

// 1 - (1/|G|^2) * sum over ordered pairs (self-pairs included) of Tanimoto
// over circular fingerprints. `off_diagonal_variant` excludes self-pairs
// (and is 0 for singleton sets).
// Throws std::invalid_argument when the valid set is empty.
double intdiv(const GenSet& g, double* off_diagonal_variant = nullptr,
              int radius = 2, int nbits = 1024);

int scaffold_count(const GenSet& g);

// Mean cosine distance between terminal hidden states of paired prefixes.
// Throws std::invalid_argument on an empty pair list.
double tis(const model::ModelParams& m, const model::Vocab& vocab,
           std::span<const std::pair<std::string, std::string>> pairs);

// Defined by the evaluation protocol but requires a pretrained external
// activation network this toolkit does not ship; always throws.
[[noreturn]] double fcd_unavailable();

}  // namespace sigma::metrics

#endif  // SIGMA_METRICS_METRICS_HPP
