//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/views/mine.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sigma/chem/parse.hpp"
#include "sigma/util/hash.hpp"
#include "sigma/version.hpp"
#include "sigma/views/partition.hpp"

namespace sigma::views {

using nlohmann::json;

std::vector<ViewPair> mine_pairs(const std::vector<chem::SmiRecord>& records,
                                 const MineConfig& config,
                                 util::RandomEngine& rng, MineStats* stats,
                                 std::vector<MalformedLine>* errors) {
  MineStats local;
  std::vector<ViewPair> pairs;
  for (const chem::SmiRecord& rec : records) {
    ++local.records_in;
    chem::ParseResult parsed = chem::parse_string(rec.smiles);
    if (!parsed.complete()) {
      ++local.malformed_lines;
      if (errors != nullptr) {
        errors->push_back({rec.line_no, parsed.irrecoverable()
                                            ? parsed.reason
                                            : "incomplete SMILES record"});
      }
      continue;
    }
    std::string source_id =
        rec.id.empty() ? "L" + std::to_string(rec.line_no) : rec.id;

    std::vector<int> cuts = cuttable_bonds(parsed.graph);
    if (cuts.empty()) {
      ++local.skipped_no_cut;
      continue;
    }
    std::vector<int> chosen;
    if (config.enumerate_all_cuts) {
      chosen = cuts;
    } else {
      chosen.push_back(cuts[static_cast<int>(
          rng() % static_cast<std::uint64_t>(cuts.size()))]);
    }
    for (int bond : chosen) {
      ++local.cut_attempts;
      try {
        ViewPair pair =
            make_views_at(parsed.graph, bond, rng, config.retry_budget);
        pair.source_id = source_id;
        pairs.push_back(std::move(pair));
        ++local.pairs_out;
      } catch (const ViewError&) {
        ++local.skipped_retries;
      }
    }
  }
  if (stats != nullptr) *stats = local;
  return pairs;
}

std::string pair_to_jsonl(const ViewPair& pair) {
  json j{{"prefix_u", pair.prefix_u},
         {"prefix_v", pair.prefix_v},
         {"suffix", pair.suffix},
         {"parent_key", pair.parent_key.key},
         {"source_id", pair.source_id}};
  return j.dump();
}

ViewPair pair_from_jsonl(const std::string& line) {
  json j = json::parse(line);
  ViewPair pair;
  pair.prefix_u = j.at("prefix_u").get<std::string>();
  pair.prefix_v = j.at("prefix_v").get<std::string>();
  pair.suffix = j.at("suffix").get<std::string>();
  pair.parent_key.key = j.at("parent_key").get<std::string>();
  pair.source_id = j.value("source_id", "");
  return pair;
}

std::vector<ViewPair> load_pairs_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pair dataset: " + path);
  std::vector<ViewPair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    pairs.push_back(pair_from_jsonl(line));
  }
  return pairs;
}

MineStats mine_dataset(const std::string& corpus_path, const MineConfig& config,
                       std::uint64_t seed, const std::string& pairs_path,
                       const std::string& manifest_path,
                       std::vector<MalformedLine>* errors) {
  std::vector<chem::SmiRecord> records = chem::read_smi_file(corpus_path);
  util::SeedSequence seeds(seed);
  util::RandomEngine rng = seeds.stream("mine");

  MineStats stats;
  std::vector<MalformedLine> local_errors;
  std::vector<ViewPair> pairs =
      mine_pairs(records, config, rng, &stats, &local_errors);

  std::ofstream out(pairs_path);
  if (!out) throw std::runtime_error("cannot open output file: " + pairs_path);
  for (const ViewPair& pair : pairs) {
    out << pair_to_jsonl(pair) << '\n';
  }

  json manifest{
      {"tool", "mine"},
      {"version", kToolkitVersion},
      {"seed", seed},
      {"config",
       {{"enumerate_all_cuts", config.enumerate_all_cuts},
        {"retry_budget", config.retry_budget}}},
      {"input", {{"path", corpus_path}, {"digest", util::file_digest(corpus_path)}}},
      {"counts",
       {{"records_in", stats.records_in},
        {"pairs_out", stats.pairs_out},
        {"skipped_no_cut", stats.skipped_no_cut},
        {"skipped_retries", stats.skipped_retries},
        {"malformed_lines", stats.malformed_lines},
        {"cut_attempts", stats.cut_attempts}}},
      {"acceptance_rate", stats.acceptance_rate()},
  };
  std::ofstream mout(manifest_path);
  if (!mout) throw std::runtime_error("cannot open output file: " + manifest_path);
  mout << manifest.dump(2) << '\n';

  if (errors != nullptr) *errors = std::move(local_errors);
  return stats;
}

}  // namespace sigma::views
