//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/metrics/curve.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "sigma/metrics/metrics.hpp"

namespace sigma::metrics {

std::vector<CurveRow> diversity_curve(const decode::Scorer& scorer,
                                      const model::Vocab& vocab,
                                      const std::vector<int>& k_list,
                                      int max_steps) {
  if (!std::is_sorted(k_list.begin(), k_list.end())) {
    throw std::invalid_argument("k_list must be ascending");
  }
  std::vector<CurveRow> rows;
  for (int k : k_list) {
    decode::DecodeConfig config;
    config.beam_width = k;
    config.max_steps = max_steps;

    auto tally = [&](const decode::DecodeResult& result, int* valid, int* scaf) {
      std::vector<std::string> smiles;
      for (const decode::BeamEntry& e : result.finished) {
        smiles.push_back(decode::entry_smiles(e, vocab));
      }
      GenSet set(std::move(smiles));
      *valid = set.valid_count();
      *scaf = scaffold_count(set);
    };

    CurveRow row;
    row.k = k;
    tally(decode::standard_beam_search(scorer, vocab, config),
          &row.valid_count_std, &row.scaf_std);
    tally(decode::isobeam_search(scorer, vocab, config), &row.valid_count_iso,
          &row.scaf_iso);
    rows.push_back(row);
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "K,valid_count_std,valid_count_iso,scaf_std,scaf_iso\n";
  for (const CurveRow& row : rows) {
    out << row.k << ',' << row.valid_count_std << ',' << row.valid_count_iso
        << ',' << row.scaf_std << ',' << row.scaf_iso << '\n';
  }
}

}  // namespace sigma::metrics
