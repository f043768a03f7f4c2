//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>

#include "sigma/chem/parse.hpp"
#include "sigma/model/loss.hpp"
#include "sigma/model/train.hpp"
#include "sigma/views/pair.hpp"

using namespace sigma;
using namespace sigma::model;

namespace {

// Unit row vectors with prescribed pairwise cosines, embedded in R^3.
MatrixXd unit_rows(int rows, const VectorXd& v) {
  MatrixXd z(rows, v.size());
  for (int i = 0; i < rows; ++i) z.row(i) = v.transpose();
  return z;
}

}  // namespace

TEST_CASE("nll of uniform logits is ln V") {
  int V = 11;
  MatrixXd logits = MatrixXd::Zero(5, V);
  std::vector<int> targets{1, 2, 3, 4, 5};
  std::vector<unsigned char> mask{1, 1, 1, 1, 1};
  CHECK(loss_nll(logits, targets, mask) == doctest::Approx(std::log(V)).epsilon(1e-12));
}

TEST_CASE("nll of confident correct logits approaches zero") {
  MatrixXd logits = MatrixXd::Zero(3, 6);
  std::vector<int> targets{1, 2, 3};
  std::vector<unsigned char> mask{1, 1, 1};
  for (int t = 0; t < 3; ++t) logits(t, targets[t]) = 50.0;
  CHECK(loss_nll(logits, targets, mask) < 1e-12);
}

TEST_CASE("nll matches a hand-computed three-token case") {
  // logits row [1, 2, 3], target 0: loss = log(e^1+e^2+e^3) - 1
  MatrixXd logits(3, 3);
  logits << 1, 2, 3, 0.5, -0.5, 0.25, 2, 2, 2;
  std::vector<int> targets{0, 2, 1};
  std::vector<unsigned char> mask{1, 1, 1};
  double expected = 0.0;
  expected += std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0)) - 1.0;
  expected += std::log(std::exp(0.5) + std::exp(-0.5) + std::exp(0.25)) - 0.25;
  expected += std::log(3.0 * std::exp(2.0)) - 2.0;
  expected /= 3.0;
  CHECK(loss_nll(logits, targets, mask) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("nll respects the mask and rejects an all-masked batch") {
  MatrixXd logits = MatrixXd::Zero(4, 5);
  std::vector<int> targets{0, 1, 2, 3};
  std::vector<unsigned char> mask{1, 0, 0, 1};
  CHECK(loss_nll(logits, targets, mask) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
  std::vector<unsigned char> none{0, 0, 0, 0};
  CHECK_THROWS_AS(loss_nll(logits, targets, none), std::invalid_argument);
}

TEST_CASE("sigma per-token closed forms") {
  VectorXd e1 = VectorXd::Unit(3, 0);
  VectorXd e2 = VectorXd::Unit(3, 1);
  int L = 4;

  SUBCASE("one negative, all similarities equal: ln 2") {
    MatrixXd zu = unit_rows(L, e1);
    MatrixXd zv = unit_rows(L, e1);
    std::vector<MatrixXd> negs{unit_rows(L, e1)};
    std::vector<unsigned char> usable{1};
    SigmaTerms t = loss_sigma(zu, zv, negs, usable, 0.7);
    CHECK(t.per_token.size() == static_cast<std::size_t>(L));
    for (double term : t.per_token) {
      CHECK(term == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    CHECK(t.mean == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }

  SUBCASE("N equal negatives: ln(1+N)") {
    for (int N : {2, 3, 7}) {
      MatrixXd zu = unit_rows(L, e1);
      MatrixXd zv = unit_rows(L, e1);
      std::vector<MatrixXd> negs(N, unit_rows(L, e1));
      std::vector<unsigned char> usable(N, 1);
      SigmaTerms t = loss_sigma(zu, zv, negs, usable, 0.3);
      CHECK(t.mean == doctest::Approx(std::log(1.0 + N)).epsilon(1e-12));
    }
  }

  SUBCASE("sim_pos 1, sim_neg 0, tau 0.1: ln(1 + e^-10)") {
    MatrixXd zu = unit_rows(L, e1);
    MatrixXd zv = unit_rows(L, e1);
    std::vector<MatrixXd> negs{unit_rows(L, e2)};
    std::vector<unsigned char> usable{1};
    SigmaTerms t = loss_sigma(zu, zv, negs, usable, 0.1);
    CHECK(t.mean ==
          doctest::Approx(std::log1p(std::exp(-10.0))).epsilon(1e-12));
  }

  SUBCASE("masked negatives drop out of the denominator") {
    MatrixXd zu = unit_rows(L, e1);
    MatrixXd zv = unit_rows(L, e1);
    std::vector<MatrixXd> negs{unit_rows(L, e1), unit_rows(L, e2)};
    std::vector<unsigned char> usable{1, 0};
    SigmaTerms t = loss_sigma(zu, zv, negs, usable, 0.7);
    CHECK(t.mean == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("sigma input validation") {
  MatrixXd z = unit_rows(2, VectorXd::Unit(3, 0));
  std::vector<MatrixXd> negs{z};
  std::vector<unsigned char> usable{1};
  CHECK_THROWS_AS(loss_sigma(z, z, negs, usable, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(loss_sigma(z, z, negs, usable, -1.0), std::invalid_argument);
  std::vector<unsigned char> none{0};
  CHECK_THROWS_AS(loss_sigma(z, z, negs, none, 0.1), std::invalid_argument);
}

TEST_CASE("loss_total composes exactly") {
  CHECK(loss_total(2.0, 0.5, 0.0) == 2.0);
  CHECK(loss_total(2.0, 0.5, 1.0) == 2.5);
  CHECK(loss_total(1.25, 0.75, 0.5) == 1.25 + 0.5 * 0.75);
  CHECK_THROWS_AS(loss_total(1.0, 1.0, -0.1), std::invalid_argument);
}

namespace {

std::vector<EncodedPair> tiny_batch(Vocab* vocab_out) {
  util::RandomEngine rng(4);
  std::vector<views::ViewPair> pairs;
  for (const char* s : {"CC(=O)c1ccccc1", "CCOC(C)C", "CC(C)CN"}) {
    pairs.push_back(views::make_views(chem::parse_string(s).graph, rng));
  }
  std::vector<std::string> corpus;
  for (const views::ViewPair& p : pairs) {
    corpus.push_back(p.prefix_u + p.suffix);
    corpus.push_back(p.prefix_v + p.suffix);
  }
  Vocab vocab = Vocab::build_from_strings(corpus);
  std::vector<EncodedPair> batch;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    views::NegativeSet negs = views::sample_negatives(pairs, i, 2, rng);
    std::vector<std::string> usable;
    for (std::size_t k = 0; k < negs.prefixes.size(); ++k) {
      if (negs.usable[k]) usable.push_back(negs.prefixes[k]);
    }
    batch.push_back(encode_pair(pairs[i], usable, vocab));
  }
  *vocab_out = vocab;
  return batch;
}

}  // namespace

TEST_CASE("projection head gradients vanish at lambda zero") {
  Vocab vocab;
  std::vector<EncodedPair> batch = tiny_batch(&vocab);
  ModelConfig cfg;
  cfg.vocab_size = vocab.size();
  cfg.d_model = 16;
  cfg.n_layers = 2;
  cfg.n_heads = 2;
  cfg.d_proj = 8;
  cfg.max_len = 48;
  ModelParams m = ModelParams::init(cfg, 21);
  GradBuffers grads(cfg);
  compute_batch(m, batch, 0.0, 0.1, false, &grads);
  CHECK(grads.shadow.proj.w1.norm() == 0.0);
  CHECK(grads.shadow.proj.w2.norm() == 0.0);
  CHECK(grads.shadow.proj.b1.norm() == 0.0);
  CHECK(grads.shadow.proj.b2.norm() == 0.0);
  CHECK(grads.shadow.tok_emb.norm() > 0.0);
}

TEST_CASE("unused vocabulary rows get zero embedding gradient") {
  Vocab vocab;
  std::vector<EncodedPair> batch = tiny_batch(&vocab);
  ModelConfig cfg;
  cfg.vocab_size = vocab.size() + 5;  // five ids never appear
  cfg.d_model = 16;
  cfg.n_layers = 2;
  cfg.n_heads = 2;
  cfg.d_proj = 8;
  cfg.max_len = 48;
  ModelParams m = ModelParams::init(cfg, 22);
  GradBuffers grads(cfg);
  compute_batch(m, batch, 0.5, 0.1, false, &grads);
  for (int id = vocab.size(); id < cfg.vocab_size; ++id) {
    CHECK(grads.shadow.tok_emb.row(id).norm() == 0.0);
  }
}

TEST_CASE("batch semantics: N pairs process 2N view sequences") {
  Vocab vocab;
  std::vector<EncodedPair> batch = tiny_batch(&vocab);
  int expected_positions = 0;
  for (const EncodedPair& p : batch) {
    expected_positions += static_cast<int>(p.u.ids.size()) - 1;
    expected_positions += static_cast<int>(p.v.ids.size()) - 1;
  }
  ModelConfig cfg;
  cfg.vocab_size = vocab.size();
  cfg.d_model = 16;
  cfg.n_layers = 2;
  cfg.n_heads = 2;
  cfg.d_proj = 8;
  cfg.max_len = 48;
  ModelParams m = ModelParams::init(cfg, 23);
  BatchLossReport report = compute_batch(m, batch, 0.5, 0.1, false, nullptr);
  CHECK(report.nll_positions == expected_positions);
  CHECK(report.total == loss_total(report.nll, report.sigma, 0.5));
}
