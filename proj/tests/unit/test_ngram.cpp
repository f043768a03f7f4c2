//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>

#include "molgen.hpp"
#include "sigma/decode/ngram.hpp"

using namespace sigma;
using namespace sigma::decode;
using sigma::model::Vocab;

namespace {

double finite_logsumexp(const Eigen::VectorXd& row) {
  double mx = -1e300;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (std::isfinite(row(i))) mx = std::max(mx, row(i));
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (std::isfinite(row(i))) sum += std::exp(row(i) - mx);
  }
  return mx + std::log(sum);
}

}  // namespace

TEST_CASE("ngram rows are normalized distributions") {
  util::RandomEngine rng(55);
  std::vector<std::string> corpus = testsupport::training_corpus(rng, 50);
  Vocab vocab = Vocab::build_from_strings(corpus);
  NGramScorer scorer = NGramScorer::fit(corpus, vocab, 3);

  std::vector<std::vector<int>> prefixes;
  prefixes.push_back({Vocab::kBos});
  std::vector<int> longer{Vocab::kBos};
  for (int id : vocab.encode("CC(=O)")) longer.push_back(id);
  prefixes.push_back(longer);
  for (const std::vector<int>& prefix : prefixes) {
    Eigen::VectorXd row = scorer.log_probs(prefix);
    CHECK(std::abs(finite_logsumexp(row)) < 1e-9);
    CHECK(!std::isfinite(row(Vocab::kPad)));
    CHECK(!std::isfinite(row(Vocab::kBos)));
  }
}

TEST_CASE("the modal continuation follows corpus counts") {
  std::vector<std::string> corpus{"CC", "CC", "CC", "CN"};
  Vocab vocab = Vocab::build_from_strings(corpus);
  NGramScorer scorer = NGramScorer::fit(corpus, vocab, 2);
  std::vector<int> prefix{Vocab::kBos, vocab.id("C")};
  Eigen::VectorXd row = scorer.log_probs(prefix);
  Eigen::Index best = 0;
  row.maxCoeff(&best);
  CHECK(static_cast<int>(best) == vocab.id("C"));
}

TEST_CASE("fitting is deterministic and validates inputs") {
  util::RandomEngine rng(56);
  std::vector<std::string> corpus = testsupport::training_corpus(rng, 30);
  Vocab vocab = Vocab::build_from_strings(corpus);
  NGramScorer a = NGramScorer::fit(corpus, vocab, 3);
  NGramScorer b = NGramScorer::fit(corpus, vocab, 3);
  std::vector<int> prefix{Vocab::kBos, vocab.id("C"), vocab.id("C")};
  CHECK(a.log_probs(prefix) == b.log_probs(prefix));

  CHECK_THROWS_AS(NGramScorer::fit({}, vocab, 3), std::invalid_argument);
  CHECK_THROWS_AS(NGramScorer::fit(corpus, vocab, 0), std::invalid_argument);
}
