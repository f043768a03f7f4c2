//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_VIEWS_MINE_HPP
#define SIGMA_VIEWS_MINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sigma/chem/smi_io.hpp"
#include "sigma/util/rng.hpp"
#include "sigma/views/pair.hpp"

namespace sigma::views {

struct MineConfig {
  // One uniformly sampled cut per molecule, or every cuttable bond.
  bool enumerate_all_cuts = false;
  int retry_budget = 16;
};

struct MineStats {
  int records_in = 0;
  int pairs_out = 0;
  int skipped_no_cut = 0;
  int skipped_retries = 0;
  int malformed_lines = 0;
  int cut_attempts = 0;

  double acceptance_rate() const {
    return cut_attempts == 0
               ? 0.0
               : static_cast<double>(pairs_out) / static_cast<double>(cut_attempts);
  }
};

struct MalformedLine {
  int line_no = 0;
  std::string message;
};

// One mining pass over corpus records. Every emitted pair is verified;
// malformed lines are reported and skipped.
std::vector<ViewPair> mine_pairs(const std::vector<chem::SmiRecord>& records,
                                 const MineConfig& config,
                                 util::RandomEngine& rng, MineStats* stats,
                                 std::vector<MalformedLine>* errors = nullptr);

// File-level wrapper: reads `corpus_path`, writes `pairs_path` (JSONL with
// fields prefix_u, prefix_v, suffix, parent_key, source_id) and
// `manifest_path` (counts, config echo, seed, input digest, version).
MineStats mine_dataset(const std::string& corpus_path, const MineConfig& config,
                       std::uint64_t seed, const std::string& pairs_path,
                       const std::string& manifest_path,
                       std::vector<MalformedLine>* errors = nullptr);

// JSONL (de)serialization used by the dataset files and the trainer.
std::string pair_to_jsonl(const ViewPair& pair);
ViewPair pair_from_jsonl(const std::string& line);
std::vector<ViewPair> load_pairs_jsonl(const std::string& path);

}  // namespace sigma::views

#endif  // SIGMA_VIEWS_MINE_HPP
