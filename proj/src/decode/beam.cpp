//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/decode/beam.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sigma/chem/parse.hpp"
#include "sigma/chem/write.hpp"

namespace sigma::decode {

namespace {

// The SMILES text of an entry: everything after BOS, stopping before EOS.
std::vector<int> smiles_ids(const std::vector<int>& ids) {
  std::vector<int> out;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == model::Vocab::kEos) break;
    out.push_back(ids[i]);
  }
  return out;
}

chem::ParseResult parse_entry(const std::vector<int>& ids,
                              const model::Vocab& vocab) {
  std::vector<int> body = smiles_ids(ids);
  if (body.empty()) {
    chem::ParseResult r;
    r.status = chem::ParseStatus::kIncomplete;
    return r;
  }
  return chem::parse(vocab.decode_tokens(body));
}

bool entry_less(const BeamEntry& a, const BeamEntry& b) {
  if (a.cum_logp != b.cum_logp) return a.cum_logp > b.cum_logp;
  return a.ids < b.ids;
}

DecodeResult run_search(const Scorer& scorer, const model::Vocab& vocab,
                        const DecodeConfig& config, bool iso,
                        const StepObserver& observer) {
  if (config.beam_width < 1 || config.max_steps < 1) {
    throw std::invalid_argument("beam width and step budget must be >= 1");
  }
  int branch_k =
      config.branch_k > 0 ? config.branch_k : config.beam_width;

  std::vector<BeamEntry> beam{BeamEntry{{model::Vocab::kBos}, 0.0, false, {}}};
  DecodeResult result;

  for (int step = 1; step <= config.max_steps; ++step) {
    bool any_incomplete = false;
    for (const BeamEntry& e : beam) any_incomplete |= !e.finished;
    if (!any_incomplete) break;

    std::vector<BeamEntry> candidates =
        step_expand(beam, scorer, vocab, branch_k);
    StepTrace trace;
    trace.step = step;
    beam = iso_filter(std::move(candidates), config.beam_width, iso, vocab,
                      &trace);
    result.trace.push_back(trace);
    if (observer) observer(step, beam);
    if (beam.empty()) break;
  }

  for (const BeamEntry& e : beam) {
    if (e.finished) result.finished.push_back(e);
  }
  return result;
}

}  // namespace

std::vector<BeamEntry> step_expand(const std::vector<BeamEntry>& beam,
                                   const Scorer& scorer,
                                   const model::Vocab& vocab, int branch_k) {
  std::vector<BeamEntry> candidates;
  for (const BeamEntry& entry : beam) {
    if (entry.finished) {
      candidates.push_back(entry);
      continue;
    }
    Eigen::VectorXd logp = scorer.log_probs(entry.ids);
    std::vector<int> order;
    for (int id = 0; id < scorer.vocab_size(); ++id) {
      if (std::isfinite(logp(id))) order.push_back(id);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (logp(a) != logp(b)) return logp(a) > logp(b);
      return a < b;
    });
    int take = std::min<int>(branch_k, static_cast<int>(order.size()));
    for (int i = 0; i < take; ++i) {
      BeamEntry next;
      next.ids = entry.ids;
      next.ids.push_back(order[i]);
      next.cum_logp = entry.cum_logp + logp(order[i]);
      candidates.push_back(std::move(next));
    }
  }
  std::sort(candidates.begin(), candidates.end(), entry_less);
  (void)vocab;
  return candidates;
}

std::vector<BeamEntry> iso_filter(std::vector<BeamEntry> candidates, int k,
                                  bool isomorphic_dedup,
                                  const model::Vocab& vocab, StepTrace* trace) {
  StepTrace local;
  local.candidates = static_cast<int>(candidates.size());

  std::vector<BeamEntry> admitted;
  std::unordered_set<std::string> seen_this_step;

  for (BeamEntry& cand : candidates) {
    if (static_cast<int>(admitted.size()) == k) {
      ++local.dropped_budget;
      continue;
    }
    if (cand.finished) {  // carried through from a previous step
      if (isomorphic_dedup && seen_this_step.count(*cand.key) > 0) {
        ++local.pruned_isomorphic;
        continue;
      }
      if (isomorphic_dedup) seen_this_step.insert(*cand.key);
      admitted.push_back(std::move(cand));
      ++local.admitted;
      continue;
    }

    bool ends_with_eos = cand.ids.back() == model::Vocab::kEos;
    chem::ParseResult parsed = parse_entry(cand.ids, vocab);
    if (parsed.irrecoverable() || (ends_with_eos && !parsed.complete())) {
      ++local.discarded_irrecoverable;
      continue;
    }
    if (parsed.complete()) {
      std::string key = chem::write_canonical(parsed.graph);
      if (isomorphic_dedup && seen_this_step.count(key) > 0) {
        ++local.pruned_isomorphic;
        continue;
      }
      if (isomorphic_dedup) seen_this_step.insert(key);
      cand.key = std::move(key);
      cand.finished = ends_with_eos;
    } else {
      cand.key.reset();  // incomplete intermediates are kept without a check
    }
    admitted.push_back(std::move(cand));
    ++local.admitted;
  }

  if (trace != nullptr) {
    local.step = trace->step;
    *trace = local;
  }
  return admitted;
}

std::string entry_smiles(const BeamEntry& entry, const model::Vocab& vocab) {
  return vocab.decode_string(smiles_ids(entry.ids));
}

DecodeResult isobeam_search(const Scorer& scorer, const model::Vocab& vocab,
                            const DecodeConfig& config,
                            const StepObserver& observer) {
  return run_search(scorer, vocab, config, true, observer);
}

DecodeResult standard_beam_search(const Scorer& scorer,
                                  const model::Vocab& vocab,
                                  const DecodeConfig& config,
                                  const StepObserver& observer) {
  return run_search(scorer, vocab, config, false, observer);
}

}  // namespace sigma::decode
