//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sigma/chem/parse.hpp"
#include "sigma/model/checkpoint.hpp"
#include "sigma/model/net.hpp"
#include "sigma/model/train.hpp"
#include "sigma/views/pair.hpp"

using namespace sigma;
using namespace sigma::model;

namespace {

Vocab test_vocab() {
  std::vector<std::string> corpus = {"CC(=O)c1ccccc1", "CCOC", "CC(C)N"};
  return Vocab::build_from_strings(corpus);
}

ModelConfig small_config(int vocab_size) {
  ModelConfig cfg;
  cfg.vocab_size = vocab_size;
  cfg.d_model = 16;
  cfg.n_layers = 2;
  cfg.n_heads = 2;
  cfg.d_proj = 8;
  cfg.max_len = 32;
  return cfg;
}

}  // namespace

TEST_CASE("vocabulary has fixed special ids and deterministic order") {
  Vocab v = test_vocab();
  CHECK(Vocab::kPad == 0);
  CHECK(Vocab::kBos == 1);
  CHECK(Vocab::kEos == 2);
  Vocab again = test_vocab();
  CHECK(v.size() == again.size());
  for (int i = 0; i < v.size(); ++i) CHECK(v.text(i) == again.text(i));

  std::vector<int> ids = v.encode("CC(=O)c1ccccc1");
  CHECK(ids.size() == 14);
  CHECK(v.decode_string(ids) == "CC(=O)c1ccccc1");
  CHECK_THROWS_AS(v.encode("CBr"), std::out_of_range);
  std::vector<int> with_special{Vocab::kBos};
  CHECK_THROWS_AS(v.decode_string(with_special), std::invalid_argument);
}

TEST_CASE("forward is causal bitwise") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 42);
  std::vector<int> ids{Vocab::kBos};
  for (int id : v.encode("CC(=O)c1ccccc1")) ids.push_back(id);

  ForwardResult base = forward(m, ids);
  std::vector<int> perturbed = ids;
  int t = 7;
  perturbed[t] = perturbed[t] == 3 ? 4 : 3;
  ForwardResult other = forward(m, perturbed);
  for (int i = 0; i < t; ++i) {
    REQUIRE(base.hidden.row(i) == other.hidden.row(i));
    REQUIRE(base.logits.row(i) == other.logits.row(i));
  }
  CHECK(base.hidden.row(t) != other.hidden.row(t));
}

TEST_CASE("zero-weight model yields uniform logits") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 1);
  for (TensorView& t : m.tensor_views()) {
    Eigen::Map<VectorXd>(t.data, t.size()).setZero();
  }
  std::vector<int> ids{Vocab::kBos, 3, 4};
  ForwardResult r = forward(m, ids);
  for (Eigen::Index row = 0; row < r.logits.rows(); ++row) {
    CHECK(r.logits.row(row).maxCoeff() == r.logits.row(row).minCoeff());
  }
}

TEST_CASE("single BOS input gives one state and one logit row") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 2);
  std::vector<int> ids{Vocab::kBos};
  ForwardResult r = forward(m, ids);
  CHECK(r.hidden.rows() == 1);
  CHECK(r.logits.rows() == 1);
  CHECK(r.logits.cols() == v.size());
}

TEST_CASE("forward validates ids and length") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 3);
  std::vector<int> bad{Vocab::kBos, v.size()};
  CHECK_THROWS_AS(forward(m, bad), std::out_of_range);
  std::vector<int> long_ids(m.cfg.max_len + 1, 3);
  CHECK_THROWS_AS(forward(m, long_ids), std::invalid_argument);
}

TEST_CASE("projection rows are unit norm and the bottleneck is enforced") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 4);
  std::vector<int> ids{Vocab::kBos, 3, 4, 5, 6};
  ForwardResult r = forward(m, ids);
  MatrixXd z = project(m, r.hidden);
  CHECK(z.cols() == m.cfg.d_proj);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    CHECK(std::abs(z.row(i).norm() - 1.0) < 1e-6);
  }

  ModelConfig bad = small_config(v.size());
  bad.d_proj = bad.d_model;
  CHECK_THROWS_AS(ModelParams::init(bad, 0), std::invalid_argument);
}

TEST_CASE("encode_prefix is deterministic, normalized, and validated") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 5);
  VectorXd a = encode_prefix(m, v, "CC(=O)");
  VectorXd b = encode_prefix(m, v, "CC(=O)");
  CHECK(a == b);
  CHECK(std::abs(a.norm() - 1.0) < 1e-9);
  CHECK_THROWS(encode_prefix(m, v, "C@H"));
}

TEST_CASE("checkpoints round-trip bitwise") {
  Vocab v = test_vocab();
  ModelParams m = ModelParams::init(small_config(v.size()), 6);
  std::string path =
      (std::filesystem::temp_directory_path() / "sigma_ckpt_test.bin").string();
  save_checkpoint(path, m, v);
  Checkpoint loaded = load_checkpoint(path);
  CHECK(loaded.vocab.size() == v.size());
  std::vector<TensorView> a = m.tensor_views();
  std::vector<TensorView> b = loaded.params.tensor_views();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(Eigen::Map<VectorXd>(a[i].data, a[i].size()) ==
            Eigen::Map<VectorXd>(b[i].data, b[i].size()));
  }
  std::remove(path.c_str());
}

TEST_CASE("training is deterministic for a fixed seed") {
  util::RandomEngine rng(77);
  std::vector<std::string> molecules = {"CC(=O)c1ccccc1", "CCOC(C)C",
                                        "CC(C)CN", "CCCCO", "c1ccncc1CC",
                                        "CCSC", "CC(C)(C)CO", "CCCNC"};
  std::vector<views::ViewPair> pairs;
  for (const std::string& s : molecules) {
    pairs.push_back(views::make_views(chem::parse_string(s).graph, rng));
  }
  std::vector<std::string> corpus;
  for (const views::ViewPair& p : pairs) {
    corpus.push_back(p.prefix_u + p.suffix);
    corpus.push_back(p.prefix_v + p.suffix);
  }
  Vocab vocab = Vocab::build_from_strings(corpus);

  TrainConfig cfg;
  cfg.model = small_config(vocab.size());
  cfg.epochs = 2;
  cfg.batch_size = 4;
  cfg.max_negatives = 2;
  cfg.seed = 99;

  TrainResult r1 = train(cfg, pairs, vocab, nullptr);
  TrainResult r2 = train(cfg, pairs, vocab, nullptr);
  CHECK(!r1.aborted);
  CHECK(r1.final_total == r2.final_total);
  std::vector<TensorView> t1 = r1.params.tensor_views();
  std::vector<TensorView> t2 = r2.params.tensor_views();
  for (std::size_t i = 0; i < t1.size(); ++i) {
    REQUIRE(Eigen::Map<VectorXd>(t1[i].data, t1[i].size()) ==
            Eigen::Map<VectorXd>(t2[i].data, t2[i].size()));
  }
}
