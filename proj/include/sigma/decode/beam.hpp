//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_DECODE_BEAM_HPP
#define SIGMA_DECODE_BEAM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sigma/decode/scorer.hpp"
#include "sigma/model/vocab.hpp"

namespace sigma::decode {

struct BeamEntry {
  std::vector<int> ids;  // starts with BOS; finished entries end with EOS
  double cum_logp = 0.0;
  bool finished = false;
  // Canonical key of the current text; set whenever the text parses
  // Complete (finished entries always have one).
  std::optional<std::string> key;
};

// Candidate classification counts for one decoding step. Once K entries are
// admitted the scan stops and the remainder is dropped unclassified, mirroring
// the early break in the reference procedure.
struct StepTrace {
  int step = 0;
  int candidates = 0;
  int admitted = 0;
  int pruned_isomorphic = 0;
  int discarded_irrecoverable = 0;
  int dropped_budget = 0;

  bool balanced() const {
    return admitted + pruned_isomorphic + discarded_irrecoverable +
               dropped_budget ==
           candidates;
  }
};

struct DecodeConfig {
  int beam_width = 8;  // K
  int max_steps = 64;  // T_max
  int branch_k = -1;   // expansions per entry; < 0 means K
};

struct DecodeResult {
  std::vector<BeamEntry> finished;  // in final-beam order
  std::vector<StepTrace> trace;
};

// Observer invoked with the beam after every step (invariant checks in
// tests; ignored when empty).
using StepObserver =
    std::function<void(int step, const std::vector<BeamEntry>& beam)>;

// Expansion: each incomplete entry proposes its branch_k best continuations;
// finished entries carry through unchanged. Sorted by cumulative
// log-probability descending, ties broken lexicographically on ids.
std::vector<BeamEntry> step_expand(const std::vector<BeamEntry>& beam,
                                   const Scorer& scorer,
                                   const model::Vocab& vocab, int branch_k);

// Descending scan over scored candidates: Irrecoverable parses are
// discarded, Incomplete parses admitted, Complete parses admitted only when
// their canonical key is unseen this step (IsoBeam) or unconditionally
// (standard). Stops after K admissions.
std::vector<BeamEntry> iso_filter(std::vector<BeamEntry> candidates, int k,
                                  bool isomorphic_dedup,
                                  const model::Vocab& vocab, StepTrace* trace);

DecodeResult isobeam_search(const Scorer& scorer, const model::Vocab& vocab,
                            const DecodeConfig& config,
                            const StepObserver& observer = {});

DecodeResult standard_beam_search(const Scorer& scorer,
                                  const model::Vocab& vocab,
                                  const DecodeConfig& config,
                                  const StepObserver& observer = {});

// SMILES text of an entry (BOS/EOS stripped).
std::string entry_smiles(const BeamEntry& entry, const model::Vocab& vocab);

}  // namespace sigma::decode

#endif  // SIGMA_DECODE_BEAM_HPP
