//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/model/net.hpp"

#include <cmath>
#include <stdexcept>

namespace sigma::model {

namespace {

constexpr double kMaskValue = -1e30;

void fill_gaussian(MatrixXd& m, util::RandomEngine& rng, double stddev) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      m(i, j) = stddev * util::gaussian(rng);
    }
  }
}

LayerNormParams make_ln(int d) {
  LayerNormParams ln;
  ln.gamma = VectorXd::Ones(d);
  ln.beta = VectorXd::Zero(d);
  return ln;
}

MatrixXd layer_norm(const MatrixXd& x, const LayerNormParams& p, double eps,
                    LayerNormCache* cache) {
  Eigen::Index L = x.rows();
  Eigen::Index d = x.cols();
  MatrixXd xhat(L, d);
  VectorXd inv_std(L);
  for (Eigen::Index i = 0; i < L; ++i) {
    double mu = x.row(i).mean();
    double var = (x.row(i).array() - mu).square().mean();
    double is = 1.0 / std::sqrt(var + eps);
    inv_std(i) = is;
    xhat.row(i) = (x.row(i).array() - mu) * is;
  }
  MatrixXd y =
      (xhat.array().rowwise() * p.gamma.transpose().array()).rowwise() +
      p.beta.transpose().array();
  if (cache != nullptr) {
    cache->xhat = xhat;
    cache->inv_std = inv_std;
  }
  return y;
}

}  // namespace

double gelu(double x) {
  return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2));
}

double gelu_derivative(double x) {
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599344;
  double phi = 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
  return phi + x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

void ModelConfig::validate() const {
  if (vocab_size <= 0) throw std::invalid_argument("vocab_size must be positive");
  if (d_model <= 0 || n_layers <= 0 || n_heads <= 0 || max_len <= 0) {
    throw std::invalid_argument("model dimensions must be positive");
  }
  if (d_model % n_heads != 0) {
    throw std::invalid_argument("d_model must be divisible by n_heads");
  }
  if (d_proj <= 0 || d_proj >= d_model) {
    throw std::invalid_argument("d_proj must lie in (0, d_model)");
  }
}

ModelParams ModelParams::init(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  util::RandomEngine rng(seed);
  constexpr double kStd = 0.02;

  ModelParams m;
  m.cfg = cfg;
  m.tok_emb.resize(cfg.vocab_size, cfg.d_model);
  fill_gaussian(m.tok_emb, rng, kStd);
  m.pos_emb.resize(cfg.max_len, cfg.d_model);
  fill_gaussian(m.pos_emb, rng, 0.01);

  m.blocks.resize(cfg.n_layers);
  for (BlockParams& b : m.blocks) {
    b.ln1 = make_ln(cfg.d_model);
    b.ln2 = make_ln(cfg.d_model);
    for (MatrixXd* w : {&b.attn.wq, &b.attn.wk, &b.attn.wv, &b.attn.wo}) {
      w->resize(cfg.d_model, cfg.d_model);
      fill_gaussian(*w, rng, kStd);
    }
    b.attn.bq = VectorXd::Zero(cfg.d_model);
    b.attn.bk = VectorXd::Zero(cfg.d_model);
    b.attn.bv = VectorXd::Zero(cfg.d_model);
    b.attn.bo = VectorXd::Zero(cfg.d_model);
    b.mlp_w1.resize(cfg.d_model, cfg.d_mlp());
    fill_gaussian(b.mlp_w1, rng, kStd);
    b.mlp_b1 = VectorXd::Zero(cfg.d_mlp());
    b.mlp_w2.resize(cfg.d_mlp(), cfg.d_model);
    fill_gaussian(b.mlp_w2, rng, kStd);
    b.mlp_b2 = VectorXd::Zero(cfg.d_model);
  }
  m.ln_f = make_ln(cfg.d_model);
  m.w_out.resize(cfg.d_model, cfg.vocab_size);
  fill_gaussian(m.w_out, rng, kStd);
  m.b_out = VectorXd::Zero(cfg.vocab_size);

  m.proj.w1.resize(cfg.d_model, cfg.d_model);
  fill_gaussian(m.proj.w1, rng, kStd);
  m.proj.b1 = VectorXd::Zero(cfg.d_model);
  m.proj.w2.resize(cfg.d_model, cfg.d_proj);
  fill_gaussian(m.proj.w2, rng, kStd);
  m.proj.b2 = VectorXd::Zero(cfg.d_proj);
  return m;
}

namespace {

template <typename Params>
std::vector<TensorView> views_of(Params& m) {
  std::vector<TensorView> out;
  auto add_m = [&out](const std::string& name, const MatrixXd& mat) {
    out.push_back({name, const_cast<double*>(mat.data()), mat.rows(), mat.cols()});
  };
  auto add_v = [&out](const std::string& name, const VectorXd& vec) {
    out.push_back({name, const_cast<double*>(vec.data()), vec.rows(), 1});
  };
  add_m("tok_emb", m.tok_emb);
  add_m("pos_emb", m.pos_emb);
  for (std::size_t l = 0; l < m.blocks.size(); ++l) {
    const BlockParams& b = m.blocks[l];
    std::string p = "block" + std::to_string(l) + ".";
    add_v(p + "ln1.gamma", b.ln1.gamma);
    add_v(p + "ln1.beta", b.ln1.beta);
    add_m(p + "attn.wq", b.attn.wq);
    add_v(p + "attn.bq", b.attn.bq);
    add_m(p + "attn.wk", b.attn.wk);
    add_v(p + "attn.bk", b.attn.bk);
    add_m(p + "attn.wv", b.attn.wv);
    add_v(p + "attn.bv", b.attn.bv);
    add_m(p + "attn.wo", b.attn.wo);
    add_v(p + "attn.bo", b.attn.bo);
    add_v(p + "ln2.gamma", b.ln2.gamma);
    add_v(p + "ln2.beta", b.ln2.beta);
    add_m(p + "mlp.w1", b.mlp_w1);
    add_v(p + "mlp.b1", b.mlp_b1);
    add_m(p + "mlp.w2", b.mlp_w2);
    add_v(p + "mlp.b2", b.mlp_b2);
  }
  add_v("ln_f.gamma", m.ln_f.gamma);
  add_v("ln_f.beta", m.ln_f.beta);
  add_m("w_out", m.w_out);
  add_v("b_out", m.b_out);
  add_m("proj.w1", m.proj.w1);
  add_v("proj.b1", m.proj.b1);
  add_m("proj.w2", m.proj.w2);
  add_v("proj.b2", m.proj.b2);
  return out;
}

}  // namespace

std::vector<TensorView> ModelParams::tensor_views() { return views_of(*this); }

std::vector<TensorView> ModelParams::tensor_views() const {
  return views_of(*this);
}

Eigen::Index ModelParams::parameter_count() const {
  Eigen::Index n = 0;
  for (const TensorView& t : tensor_views()) n += t.size();
  return n;
}

ForwardResult forward(const ModelParams& m, std::span<const int> ids,
                      bool need_cache) {
  const ModelConfig& cfg = m.cfg;
  Eigen::Index L = static_cast<Eigen::Index>(ids.size());
  if (L == 0) throw std::invalid_argument("empty id sequence");
  if (L > cfg.max_len) throw std::invalid_argument("sequence exceeds max_len");
  for (int id : ids) {
    if (id < 0 || id >= cfg.vocab_size) {
      throw std::out_of_range("token id out of vocabulary range");
    }
  }

  ForwardResult res;
  ForwardCache& cache = res.cache;
  if (need_cache) cache.ids.assign(ids.begin(), ids.end());

  MatrixXd x(L, cfg.d_model);
  for (Eigen::Index t = 0; t < L; ++t) {
    x.row(t) = m.tok_emb.row(ids[t]) + m.pos_emb.row(t);
  }
  if (need_cache) cache.x0 = x;
  if (need_cache) cache.blocks.resize(cfg.n_layers);

  double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(cfg.d_head()));
  for (int l = 0; l < cfg.n_layers; ++l) {
    const BlockParams& b = m.blocks[l];
    BlockCache* bc = need_cache ? &cache.blocks[l] : nullptr;
    if (bc != nullptr) bc->x_in = x;

    MatrixXd n1 = layer_norm(x, b.ln1, cfg.ln_eps, bc ? &bc->ln1 : nullptr);
    MatrixXd q = (n1 * b.attn.wq).rowwise() + b.attn.bq.transpose();
    MatrixXd k = (n1 * b.attn.wk).rowwise() + b.attn.bk.transpose();
    MatrixXd v = (n1 * b.attn.wv).rowwise() + b.attn.bv.transpose();
    if (bc != nullptr) {
      bc->n1 = n1;
      bc->q = q;
      bc->k = k;
      bc->v = v;
      bc->attn_probs.resize(cfg.n_heads);
    }

    MatrixXd concat(L, cfg.d_model);
    int dh = cfg.d_head();
    for (int h = 0; h < cfg.n_heads; ++h) {
      auto qh = q.middleCols(h * dh, dh);
      auto kh = k.middleCols(h * dh, dh);
      auto vh = v.middleCols(h * dh, dh);
      MatrixXd scores = qh * kh.transpose() * inv_sqrt_dh;
      for (Eigen::Index i = 0; i < L; ++i) {
        for (Eigen::Index j = i + 1; j < L; ++j) scores(i, j) = kMaskValue;
      }
      MatrixXd probs(L, L);
      for (Eigen::Index i = 0; i < L; ++i) {
        double mx = scores.row(i).maxCoeff();
        Eigen::Array<double, 1, Eigen::Dynamic> e =
            (scores.row(i).array() - mx).exp();
        probs.row(i) = e / e.sum();
      }
      concat.middleCols(h * dh, dh) = probs * vh;
      if (bc != nullptr) bc->attn_probs[h] = std::move(probs);
    }
    if (bc != nullptr) bc->attn_concat = concat;

    MatrixXd attn_out = (concat * b.attn.wo).rowwise() + b.attn.bo.transpose();
    MatrixXd x_mid = x + attn_out;
    if (bc != nullptr) bc->x_mid = x_mid;

    MatrixXd n2 = layer_norm(x_mid, b.ln2, cfg.ln_eps, bc ? &bc->ln2 : nullptr);
    MatrixXd pre = (n2 * b.mlp_w1).rowwise() + b.mlp_b1.transpose();
    MatrixXd act = pre.unaryExpr([](double u) { return gelu(u); });
    if (bc != nullptr) {
      bc->n2 = n2;
      bc->mlp_pre = pre;
      bc->mlp_act = act;
    }
    x = x_mid + ((act * b.mlp_w2).rowwise() + b.mlp_b2.transpose());
  }

  if (need_cache) cache.x_last = x;
  res.hidden = layer_norm(x, m.ln_f, cfg.ln_eps, need_cache ? &cache.ln_f : nullptr);
  if (need_cache) cache.hidden = res.hidden;
  res.logits = (res.hidden * m.w_out).rowwise() + m.b_out.transpose();
  return res;
}

MatrixXd project(const ModelParams& m, const MatrixXd& hidden,
                 ProjectionCache* cache) {
  MatrixXd pre = (hidden * m.proj.w1).rowwise() + m.proj.b1.transpose();
  MatrixXd post = pre.cwiseMax(0.0);
  MatrixXd z = (post * m.proj.w2).rowwise() + m.proj.b2.transpose();
  VectorXd norms = z.rowwise().norm();
  MatrixXd zhat(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    zhat.row(i) = z.row(i) / (norms(i) + kNormEpsilon);
  }
  if (cache != nullptr) {
    cache->h_in = hidden;
    cache->pre_relu = pre;
    cache->post_relu = post;
    cache->z_raw = z;
    cache->raw_norm = norms;
  }
  return zhat;
}

VectorXd encode_prefix(const ModelParams& m, const Vocab& vocab,
                       std::string_view prefix) {
  std::vector<int> ids{Vocab::kBos};
  for (int id : vocab.encode(prefix)) ids.push_back(id);
  ForwardResult res = forward(m, ids, false);
  VectorXd h = res.hidden.row(res.hidden.rows() - 1);
  return h / (h.norm() + kNormEpsilon);
}

}  // namespace sigma::model
