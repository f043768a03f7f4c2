//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "molgen.hpp"
#include "sigma/chem/parse.hpp"
#include "sigma/chem/write.hpp"
#include "sigma/decode/beam.hpp"
#include "sigma/decode/ngram.hpp"

using namespace sigma;
using namespace sigma::decode;
using sigma::model::Vocab;

namespace {

BeamEntry entry_of(const Vocab& vocab, const std::string& smiles, double logp,
                   bool with_eos = false) {
  BeamEntry e;
  e.ids.push_back(Vocab::kBos);
  for (int id : vocab.encode(smiles)) e.ids.push_back(id);
  if (with_eos) e.ids.push_back(Vocab::kEos);
  e.cum_logp = logp;
  return e;
}

std::string key_of(const std::string& smiles) {
  return chem::write_canonical(chem::parse_string(smiles).graph);
}

// Fixed-distribution scorer over explicit continuation tables.
class TableScorer : public Scorer {
 public:
  TableScorer(const Vocab* vocab, std::map<std::string, std::map<std::string, double>> table)
      : vocab_(vocab), table_(std::move(table)) {}

  int vocab_size() const override { return vocab_->size(); }

  Eigen::VectorXd log_probs(std::span<const int> prefix_ids) const override {
    std::string prefix;
    for (std::size_t i = 1; i < prefix_ids.size(); ++i) {
      prefix += vocab_->text(prefix_ids[i]);
    }
    Eigen::VectorXd row = Eigen::VectorXd::Constant(
        vocab_->size(), -std::numeric_limits<double>::infinity());
    auto it = table_.find(prefix);
    if (it == table_.end()) return row;
    for (const auto& [text, p] : it->second) {
      int id = text == "<eos>" ? Vocab::kEos : vocab_->id(text);
      row(id) = std::log(p);
    }
    return row;
  }

 private:
  const Vocab* vocab_;
  std::map<std::string, std::map<std::string, double>> table_;
};

}  // namespace

TEST_CASE("iso_filter prunes the lower-probability isomorphic candidate") {
  std::vector<std::string> corpus{"CC(=O)c1ccccc1", "O=C(C)c1ccccc1",
                                  "CCc1ccncc1"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  std::vector<BeamEntry> candidates{
      entry_of(vocab, "CC(=O)c1ccccc1", -1.0),
      entry_of(vocab, "O=C(C)c1ccccc1", -1.2),  // isomorphic duplicate
      entry_of(vocab, "CCc1ccncc1", -1.5),      // distinct scaffold
  };
  StepTrace trace;
  std::vector<BeamEntry> beam = iso_filter(candidates, 2, true, vocab, &trace);
  REQUIRE(beam.size() == 2);
  CHECK(*beam[0].key == key_of("CC(=O)c1ccccc1"));
  CHECK(*beam[1].key == key_of("CCc1ccncc1"));
  CHECK(trace.admitted == 2);
  CHECK(trace.pruned_isomorphic == 1);
  CHECK(trace.balanced());

  // without the key check this is plain top-K truncation
  StepTrace std_trace;
  std::vector<BeamEntry> std_beam =
      iso_filter(candidates, 2, false, vocab, &std_trace);
  REQUIRE(std_beam.size() == 2);
  CHECK(*std_beam[1].key == key_of("O=C(C)c1ccccc1"));
  CHECK(std_trace.pruned_isomorphic == 0);
  CHECK(std_trace.dropped_budget == 1);
  CHECK(std_trace.balanced());
}

TEST_CASE("iso_filter keeps incomplete intermediates without a key check") {
  std::vector<std::string> corpus{"CC(=O)c1ccccc1"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  std::vector<BeamEntry> candidates{entry_of(vocab, "CC(=O)c1cc", -0.5)};
  StepTrace trace;
  std::vector<BeamEntry> beam = iso_filter(candidates, 4, true, vocab, &trace);
  REQUIRE(beam.size() == 1);
  CHECK(!beam[0].key.has_value());
  CHECK(!beam[0].finished);
}

TEST_CASE("iso_filter discards irrecoverable candidates and bad EOS") {
  std::vector<std::string> corpus{"CC(=O)c1ccccc1", "C)C"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  std::vector<BeamEntry> candidates{
      entry_of(vocab, "CC)", -0.1),
      entry_of(vocab, "CC(", -0.2, true),  // EOS on an incomplete string
      entry_of(vocab, "CC", -0.3, true),   // EOS on a complete string
  };
  StepTrace trace;
  std::vector<BeamEntry> beam = iso_filter(candidates, 8, true, vocab, &trace);
  REQUIRE(beam.size() == 1);
  CHECK(beam[0].finished);
  CHECK(*beam[0].key == key_of("CC"));
  CHECK(trace.discarded_irrecoverable == 2);
  CHECK(trace.balanced());
}

TEST_CASE("greedy decoding is the K=1 special case") {
  std::vector<std::string> corpus{"CCO", "CCN"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  TableScorer scorer(&vocab,
                     {{"", {{"C", 1.0}}},
                      {"C", {{"C", 1.0}}},
                      {"CC", {{"O", 0.7}, {"N", 0.3}}},
                      {"CCO", {{"<eos>", 1.0}}},
                      {"CCN", {{"<eos>", 1.0}}}});
  DecodeConfig config;
  config.beam_width = 1;
  config.max_steps = 8;
  DecodeResult result = isobeam_search(scorer, vocab, config);
  REQUIRE(result.finished.size() == 1);
  CHECK(entry_smiles(result.finished[0], vocab) == "CCO");
}

TEST_CASE("standard beam keeps isomorphic duplicates, IsoBeam does not") {
  std::vector<std::string> corpus{"CCO", "OCC"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  // Both serializations of ethanol get probability mass.
  TableScorer scorer(&vocab,
                     {{"", {{"C", 0.6}, {"O", 0.4}}},
                      {"C", {{"C", 1.0}}},
                      {"CC", {{"O", 1.0}}},
                      {"CCO", {{"<eos>", 1.0}}},
                      {"O", {{"C", 1.0}}},
                      {"OC", {{"C", 1.0}}},
                      {"OCC", {{"<eos>", 1.0}}}});
  DecodeConfig config;
  config.beam_width = 4;
  config.max_steps = 10;

  DecodeResult std_result = standard_beam_search(scorer, vocab, config);
  REQUIRE(std_result.finished.size() == 2);
  CHECK(*std_result.finished[0].key == *std_result.finished[1].key);

  DecodeResult iso_result = isobeam_search(scorer, vocab, config);
  REQUIRE(iso_result.finished.size() == 1);
  CHECK(entry_smiles(iso_result.finished[0], vocab) == "CCO");
}

TEST_CASE("searches on an n-gram scorer hold the beam invariants") {
  util::RandomEngine rng(66);
  std::vector<std::string> corpus = testsupport::training_corpus(rng, 120);
  Vocab vocab = Vocab::build_from_strings(corpus);
  NGramScorer scorer = NGramScorer::fit(corpus, vocab, 3);

  DecodeConfig config;
  config.beam_width = 8;
  config.max_steps = 40;

  int observed_steps = 0;
  StepObserver observer = [&](int, const std::vector<BeamEntry>& beam) {
    ++observed_steps;
    CHECK(static_cast<int>(beam.size()) <= config.beam_width);
    std::set<std::string> keys;
    double last = std::numeric_limits<double>::infinity();
    for (const BeamEntry& e : beam) {
      CHECK(e.cum_logp <= last);
      last = e.cum_logp;
      if (e.key) {
        CHECK(keys.count(*e.key) == 0);  // step invariant
        keys.insert(*e.key);
      }
    }
  };
  DecodeResult result = isobeam_search(scorer, vocab, config, observer);
  CHECK(observed_steps == static_cast<int>(result.trace.size()));
  for (const StepTrace& t : result.trace) CHECK(t.balanced());

  std::set<std::string> finished_keys;
  for (const BeamEntry& e : result.finished) {
    REQUIRE(e.key.has_value());
    CHECK(finished_keys.count(*e.key) == 0);
    finished_keys.insert(*e.key);
  }

  // identical expansion scores before filtering: same first-step candidates
  DecodeResult std_result = standard_beam_search(scorer, vocab, config);
  REQUIRE(!std_result.trace.empty());
  CHECK(std_result.trace[0].candidates == result.trace[0].candidates);
}

TEST_CASE("decode configuration is validated") {
  std::vector<std::string> corpus{"CC"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  NGramScorer scorer = NGramScorer::fit(corpus, vocab, 2);
  DecodeConfig bad;
  bad.beam_width = 0;
  CHECK_THROWS_AS(isobeam_search(scorer, vocab, bad), std::invalid_argument);
}
