//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <set>

#include "molgen.hpp"
#include "sigma/chem/parse.hpp"
#include "sigma/chem/smi_io.hpp"
#include "sigma/chem/write.hpp"
#include "sigma/views/mine.hpp"
#include "sigma/views/pair.hpp"
#include "sigma/views/partition.hpp"

using namespace sigma;
using namespace sigma::views;

namespace {

chem::MolGraph mol(const std::string& smiles) {
  chem::ParseResult r = chem::parse_string(smiles);
  REQUIRE(r.complete());
  return r.graph;
}

}  // namespace

TEST_CASE("cuttable bonds: worked examples") {
  CHECK(cuttable_bonds(mol("CC")).empty());
  CHECK(cuttable_bonds(mol("c1ccccc1")).empty());
  std::vector<int> aceto = cuttable_bonds(mol("CC(=O)c1ccccc1"));
  REQUIRE(aceto.size() == 1);
  // the one eligible bond joins the carbonyl carbon to the ring
  chem::MolGraph g = mol("CC(=O)c1ccccc1");
  const chem::Bond& b = g.bond(aceto[0]);
  CHECK((g.atom(b.a).aromatic || g.atom(b.b).aromatic));
}

TEST_CASE("partition places anchors and preserves identity") {
  chem::MolGraph g = mol("CC(=O)c1ccccc1");
  int bond = cuttable_bonds(g)[0];
  PartitionedMol part = partition(g, bond);
  CHECK(part.prefix_graph.anchor_count() == 1);
  CHECK(part.suffix_graph.anchor_count() == 1);
  CHECK(part.prefix_graph.atom_count() >= 3);
  CHECK(part.suffix_graph.atom_count() >= 3);
  CHECK(chem::canonical_key(reattach(part)) == part.parent_key);
  CHECK_THROWS_AS(partition(g, (bond + 1) % g.bond_count()),
                  std::invalid_argument);
}

TEST_CASE("make_views produces the acetophenone views") {
  chem::MolGraph g = mol("CC(=O)c1ccccc1");
  util::RandomEngine rng(5);
  std::set<std::string> seen_v;
  for (int i = 0; i < 32; ++i) {
    ViewPair p = make_views(g, rng);
    CHECK(p.suffix == "c1ccccc1");
    CHECK(p.prefix_u == "CC(=O)");
    CHECK(p.prefix_u != p.prefix_v);
    CHECK(verify_pair(p).ok);
    seen_v.insert(p.prefix_v);
  }
  // the paper's alternative linearization is reachable
  CHECK(seen_v.count("O=C(C)") == 1);
}

TEST_CASE("make_views errors are typed") {
  util::RandomEngine rng(6);
  try {
    make_views(mol("CC"), rng);
    FAIL("expected ViewError");
  } catch (const ViewError& e) {
    CHECK(e.kind == ViewErrorKind::kNoCuttableBond);
  }
}

TEST_CASE("probe_complete worked examples") {
  CHECK(probe_complete("C1CC") == "C1CC1");
  CHECK(probe_complete("c1ccccc1") == "c1ccccc1");  // already complete
  CHECK(probe_complete("CC(") == "CC(C)");
  CHECK(probe_complete("CC=") == "CC=C");
  CHECK(probe_complete("C[NH2+]") == "C[NH2+]C");  // methyl cap
  CHECK(probe_complete("C1CC(") == "C1CC(C1)");
  CHECK_THROWS_AS(probe_complete("C)"), std::invalid_argument);
}

TEST_CASE("probe output parses complete and strips byte-exactly") {
  util::RandomEngine rng(7);
  testsupport::MolGenConfig cfg;
  for (int i = 0; i < 60; ++i) {
    chem::MolGraph g = testsupport::random_molecule(rng, cfg);
    std::vector<int> cuts = cuttable_bonds(g);
    if (cuts.empty()) continue;
    ViewPair p = make_views_at(g, cuts[0], rng);
    std::string completed = probe_complete(p.prefix_u);
    CHECK(chem::parse_string(completed).complete());
    REQUIRE(completed.substr(0, p.prefix_u.size()) == p.prefix_u);
    if (p.probe) {
      CHECK(completed == p.prefix_u + *p.probe);
    } else {
      CHECK(completed == p.prefix_u);
    }
  }
}

TEST_CASE("verify_pair rejects broken pairs with reasons") {
  ViewPair same;
  same.prefix_u = same.prefix_v = "CC(=O)";
  same.suffix = "c1ccccc1";
  same.parent_key = chem::canonical_key(mol("CC(=O)c1ccccc1"));
  CHECK(verify_pair(same).reason == VerifyReason::kDivergenceViolated);

  ViewPair mismatch;
  mismatch.prefix_u = "CCO";
  mismatch.prefix_v = "CCN";
  mismatch.suffix = "C";
  mismatch.parent_key = chem::canonical_key(mol("CCOC"));
  CHECK(verify_pair(mismatch).reason == VerifyReason::kKeyMismatch);

  ViewPair broken;
  broken.prefix_u = "CC(";
  broken.prefix_v = "C(C)(";
  broken.suffix = "C";
  broken.parent_key = chem::canonical_key(mol("CCC"));
  CHECK(verify_pair(broken).reason == VerifyReason::kParseUFailed);
}

TEST_CASE("sample_negatives masks same-molecule and incompatible entries") {
  chem::MolGraph g = mol("CC(=O)c1ccccc1");
  util::RandomEngine rng(8);
  std::vector<ViewPair> singles;
  for (int i = 0; i < 3; ++i) singles.push_back(make_views(g, rng));

  NegativeSet all_same = sample_negatives(singles, 0, 4, rng);
  CHECK(all_same.usable_count() == 0);  // every candidate shares the parent

  std::vector<ViewPair> batch = singles;
  batch.push_back(make_views(mol("CCCCc1ccncc1"), rng));
  NegativeSet mixed = sample_negatives(batch, 0, 6, rng);
  CHECK(mixed.usable_count() > 0);
  for (std::size_t i = 0; i < mixed.prefixes.size(); ++i) {
    if (!mixed.usable[i]) continue;
    chem::ParseResult joined =
        chem::parse_string(mixed.prefixes[i] + batch[0].suffix);
    REQUIRE(joined.complete());
    CHECK(chem::canonical_key(joined.graph) != batch[0].parent_key);
  }

  NegativeSet padded = sample_negatives(singles, 0, 50, rng);
  CHECK(padded.prefixes.size() == 50);  // short pools pad with masked slots
}

TEST_CASE("mine_pairs worked examples") {
  MineConfig config;
  util::RandomEngine rng(9);
  MineStats stats;

  std::vector<chem::SmiRecord> ethane{{"CC", "", 1}};
  CHECK(mine_pairs(ethane, config, rng, &stats).empty());
  CHECK(stats.skipped_no_cut == 1);

  std::vector<chem::SmiRecord> aceto{{"CC(=O)c1ccccc1", "aceto", 1}};
  std::vector<ViewPair> pairs = mine_pairs(aceto, config, rng, &stats);
  REQUIRE(pairs.size() == 1);
  CHECK(stats.pairs_out == 1);
  CHECK(pairs[0].source_id == "aceto");

  std::vector<chem::SmiRecord> broken{{"CC(=O)c1ccccc1", "", 1},
                                      {"C)", "", 2},
                                      {"не smiles", "", 3}};
  std::vector<MalformedLine> errors;
  mine_pairs(broken, config, rng, &stats, &errors);
  CHECK(stats.malformed_lines == 2);
  REQUIRE(errors.size() == 2);
  CHECK(errors[0].line_no == 2);
  CHECK(errors[1].line_no == 3);
}

TEST_CASE("aspirin mining yields the acetyl prefix pair") {
  MineConfig config;
  config.enumerate_all_cuts = true;
  util::RandomEngine rng(10);
  MineStats stats;
  std::vector<chem::SmiRecord> corpus{{"CC(=O)Oc1ccccc1C(=O)O", "aspirin", 1}};
  bool found = false;
  for (int attempt = 0; attempt < 16 && !found; ++attempt) {
    for (const ViewPair& p : mine_pairs(corpus, config, rng, &stats)) {
      if (p.prefix_u == "CC(=O)" && p.prefix_v == "O=C(C)") found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("mined datasets are self-certifying and round-trip through JSONL") {
  util::RandomEngine rng(11);
  std::vector<chem::SmiRecord> records;
  std::vector<std::string> corpus = testsupport::training_corpus(rng, 60);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    records.push_back({corpus[i], "m" + std::to_string(i),
                       static_cast<int>(i) + 1});
  }
  MineConfig config;
  MineStats stats;
  std::vector<ViewPair> pairs = mine_pairs(records, config, rng, &stats);
  CHECK(stats.pairs_out > 30);
  for (const ViewPair& p : pairs) {
    ViewPair reloaded = pair_from_jsonl(pair_to_jsonl(p));
    CHECK(verify_pair(reloaded).ok);
    // suffix bytes are shared verbatim by both concatenations
    CHECK((reloaded.prefix_u + reloaded.suffix)
              .substr(reloaded.prefix_u.size()) == reloaded.suffix);
  }
}
