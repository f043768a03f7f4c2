//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_NET_HPP
#define SIGMA_MODEL_NET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sigma/model/vocab.hpp"
#include "sigma/util/rng.hpp"

namespace sigma::model {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ModelConfig {
  int vocab_size = 0;
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 2;
  int d_proj = 16;  // must stay below d_model (bottleneck)
  int max_len = 128;
  double ln_eps = 1e-5;

  int d_head() const { return d_model / n_heads; }
  int d_mlp() const { return 4 * d_model; }
  void validate() const;  // throws std::invalid_argument
};

struct LayerNormParams {
  VectorXd gamma;
  VectorXd beta;
};

struct AttentionParams {
  MatrixXd wq, wk, wv, wo;  // d_model x d_model, row-vector convention
  VectorXd bq, bk, bv, bo;
};

struct BlockParams {
  LayerNormParams ln1;
  AttentionParams attn;
  LayerNormParams ln2;
  MatrixXd mlp_w1;  // d_model x d_mlp
  VectorXd mlp_b1;
  MatrixXd mlp_w2;  // d_mlp x d_model
  VectorXd mlp_b2;
};

// Two affine maps with a ReLU between; training-only, never on the
// generation path.
struct ProjectionParams {
  MatrixXd w1;  // d_model x d_model
  VectorXd b1;
  MatrixXd w2;  // d_model x d_proj
  VectorXd b2;
};

struct TensorView {
  std::string name;
  double* data;
  Eigen::Index rows;
  Eigen::Index cols;

  Eigen::Index size() const { return rows * cols; }
};

// Causal encoder (pre-norm transformer blocks), output head, and projection
// head. Double precision throughout.
struct ModelParams {
  ModelConfig cfg;
  MatrixXd tok_emb;  // V x d_model
  MatrixXd pos_emb;  // max_len x d_model
  std::vector<BlockParams> blocks;
  LayerNormParams ln_f;
  MatrixXd w_out;  // d_model x V
  VectorXd b_out;
  ProjectionParams proj;

  static ModelParams init(const ModelConfig& cfg, std::uint64_t seed);

  // Every tensor in a fixed declared order (checkpoints, the optimizer, and
  // finite differences all walk this list).
  std::vector<TensorView> tensor_views();
  std::vector<TensorView> tensor_views() const;

  Eigen::Index parameter_count() const;
};

struct LayerNormCache {
  MatrixXd xhat;      // L x d
  VectorXd inv_std;   // per row
};

struct BlockCache {
  MatrixXd x_in;  // block input
  LayerNormCache ln1;
  MatrixXd n1;
  MatrixXd q, k, v;
  std::vector<MatrixXd> attn_probs;  // per head, L x L
  MatrixXd attn_concat;              // heads merged, before wo
  MatrixXd x_mid;                    // after attention residual
  LayerNormCache ln2;
  MatrixXd n2;
  MatrixXd mlp_pre;  // before GELU
  MatrixXd mlp_act;  // after GELU
};

struct ForwardCache {
  std::vector<int> ids;
  MatrixXd x0;
  std::vector<BlockCache> blocks;
  LayerNormCache ln_f;
  MatrixXd x_last;  // input to the final layer norm
  MatrixXd hidden;  // post final layer norm
};

struct ForwardResult {
  MatrixXd hidden;  // L x d_model, post final layer norm
  MatrixXd logits;  // L x V
  ForwardCache cache;
};

// Causal forward pass. h_t depends only on ids[0..t].
// Throws on id out of range or length overflow.
ForwardResult forward(const ModelParams& m, std::span<const int> ids,
                      bool need_cache = false);

struct ProjectionCache {
  MatrixXd h_in;
  MatrixXd pre_relu;
  MatrixXd post_relu;
  MatrixXd z_raw;
  VectorXd raw_norm;  // ||z|| per row (without epsilon)
};

inline constexpr double kNormEpsilon = 1e-12;

// Rows of the result have unit L2 norm (up to the epsilon guard).
MatrixXd project(const ModelParams& m, const MatrixXd& hidden,
                 ProjectionCache* cache = nullptr);

// Normalized terminal hidden state of [BOS] + prefix tokens.
VectorXd encode_prefix(const ModelParams& m, const Vocab& vocab,
                       std::string_view prefix);

double gelu(double x);
double gelu_derivative(double x);

}  // namespace sigma::model

#endif  // SIGMA_MODEL_NET_HPP
