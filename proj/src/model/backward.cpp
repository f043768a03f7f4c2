//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/model/backward.hpp"

#include <cmath>

namespace sigma::model {

GradBuffers::GradBuffers(const ModelConfig& cfg)
    : shadow(ModelParams::init(cfg, 0)) {
  zero();
}

void GradBuffers::zero() {
  for (TensorView& t : shadow.tensor_views()) {
    Eigen::Map<VectorXd>(t.data, t.size()).setZero();
  }
}

double GradBuffers::global_norm() const {
  double sq = 0.0;
  for (const TensorView& t : shadow.tensor_views()) {
    sq += Eigen::Map<const VectorXd>(t.data, t.size()).squaredNorm();
  }
  return std::sqrt(sq);
}

namespace {

// dY -> dX for y = xhat * gamma + beta, with per-row normalization stats.
MatrixXd layer_norm_backward(const MatrixXd& dy, const LayerNormCache& cache,
                             const LayerNormParams& p, VectorXd& dgamma,
                             VectorXd& dbeta) {
  Eigen::Index L = dy.rows();
  Eigen::Index d = dy.cols();
  dbeta += dy.colwise().sum().transpose();
  dgamma += (dy.array() * cache.xhat.array()).colwise().sum().matrix().transpose();

  MatrixXd dx(L, d);
  for (Eigen::Index i = 0; i < L; ++i) {
    Eigen::Array<double, 1, Eigen::Dynamic> dxhat =
        dy.row(i).array() * p.gamma.transpose().array();
    double m1 = dxhat.mean();
    double m2 = (dxhat * cache.xhat.row(i).array()).mean();
    dx.row(i) = (cache.inv_std(i) *
                 (dxhat - m1 - cache.xhat.row(i).array() * m2))
                    .matrix();
  }
  return dx;
}

}  // namespace

void backward(const ModelParams& m, const ForwardCache& cache,
              const MatrixXd& dlogits, const MatrixXd& dhidden_extra,
              GradBuffers& grads) {
  const ModelConfig& cfg = m.cfg;
  Eigen::Index L = cache.x0.rows();
  ModelParams& g = grads.shadow;

  MatrixXd dhidden = MatrixXd::Zero(L, cfg.d_model);
  if (dlogits.size() != 0) {
    g.w_out += cache.hidden.transpose() * dlogits;
    g.b_out += dlogits.colwise().sum().transpose();
    dhidden += dlogits * m.w_out.transpose();
  }
  if (dhidden_extra.size() != 0) dhidden += dhidden_extra;

  MatrixXd dx = layer_norm_backward(dhidden, cache.ln_f, m.ln_f, g.ln_f.gamma,
                                    g.ln_f.beta);

  double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(cfg.d_head()));
  for (int l = cfg.n_layers - 1; l >= 0; --l) {
    const BlockParams& b = m.blocks[l];
    BlockParams& gb = g.blocks[l];
    const BlockCache& bc = cache.blocks[l];

    // MLP sublayer: x_out = x_mid + gelu(n2 w1 + b1) w2 + b2
    MatrixXd d_mlp_out = dx;  // residual carries dx through as well
    gb.mlp_b2 += d_mlp_out.colwise().sum().transpose();
    gb.mlp_w2 += bc.mlp_act.transpose() * d_mlp_out;
    MatrixXd d_act = d_mlp_out * b.mlp_w2.transpose();
    MatrixXd d_pre =
        d_act.cwiseProduct(bc.mlp_pre.unaryExpr([](double u) {
          return gelu_derivative(u);
        }));
    gb.mlp_b1 += d_pre.colwise().sum().transpose();
    gb.mlp_w1 += bc.n2.transpose() * d_pre;
    MatrixXd d_n2 = d_pre * b.mlp_w1.transpose();
    MatrixXd d_xmid =
        dx + layer_norm_backward(d_n2, bc.ln2, b.ln2, gb.ln2.gamma, gb.ln2.beta);

    // Attention sublayer: x_mid = x_in + (concat wo + bo)
    MatrixXd d_attn_out = d_xmid;
    gb.attn.bo += d_attn_out.colwise().sum().transpose();
    gb.attn.wo += bc.attn_concat.transpose() * d_attn_out;
    MatrixXd d_concat = d_attn_out * b.attn.wo.transpose();

    MatrixXd dq = MatrixXd::Zero(L, cfg.d_model);
    MatrixXd dk = MatrixXd::Zero(L, cfg.d_model);
    MatrixXd dv = MatrixXd::Zero(L, cfg.d_model);
    int dh = cfg.d_head();
    for (int h = 0; h < cfg.n_heads; ++h) {
      auto qh = bc.q.middleCols(h * dh, dh);
      auto kh = bc.k.middleCols(h * dh, dh);
      auto vh = bc.v.middleCols(h * dh, dh);
      const MatrixXd& probs = bc.attn_probs[h];
      MatrixXd d_oh = d_concat.middleCols(h * dh, dh);
      MatrixXd d_probs = d_oh * vh.transpose();
      dv.middleCols(h * dh, dh) = probs.transpose() * d_oh;
      // softmax rows: ds = p .* (dp - sum(dp .* p))
      MatrixXd d_scores(L, L);
      for (Eigen::Index i = 0; i < L; ++i) {
        double dot = d_probs.row(i).dot(probs.row(i));
        d_scores.row(i) =
            (probs.row(i).array() * (d_probs.row(i).array() - dot)).matrix();
      }
      d_scores *= inv_sqrt_dh;
      dq.middleCols(h * dh, dh) = d_scores * kh;
      dk.middleCols(h * dh, dh) = d_scores.transpose() * qh;
    }

    gb.attn.bq += dq.colwise().sum().transpose();
    gb.attn.bk += dk.colwise().sum().transpose();
    gb.attn.bv += dv.colwise().sum().transpose();
    gb.attn.wq += bc.n1.transpose() * dq;
    gb.attn.wk += bc.n1.transpose() * dk;
    gb.attn.wv += bc.n1.transpose() * dv;
    MatrixXd d_n1 = dq * b.attn.wq.transpose() + dk * b.attn.wk.transpose() +
                    dv * b.attn.wv.transpose();
    dx = d_xmid +
         layer_norm_backward(d_n1, bc.ln1, b.ln1, gb.ln1.gamma, gb.ln1.beta);
  }

  for (Eigen::Index t = 0; t < L; ++t) {
    g.tok_emb.row(cache.ids[t]) += dx.row(t);
    g.pos_emb.row(t) += dx.row(t);
  }
}

MatrixXd project_backward(const ModelParams& m, const ProjectionCache& cache,
                          const MatrixXd& d_zhat, GradBuffers& grads) {
  Eigen::Index L = d_zhat.rows();
  MatrixXd dz(L, d_zhat.cols());
  for (Eigen::Index i = 0; i < L; ++i) {
    double raw = cache.raw_norm(i);
    double s = raw + kNormEpsilon;
    Eigen::RowVectorXd z = cache.z_raw.row(i);
    dz.row(i) = d_zhat.row(i) / s;
    if (raw > 0.0) {
      double coeff = z.dot(d_zhat.row(i)) / (s * s * raw);
      dz.row(i) -= coeff * z;
    }
  }
  ModelParams& g = grads.shadow;
  g.proj.b2 += dz.colwise().sum().transpose();
  g.proj.w2 += cache.post_relu.transpose() * dz;
  MatrixXd d_post = dz * m.proj.w2.transpose();
  MatrixXd d_pre = d_post.cwiseProduct(
      cache.pre_relu.unaryExpr([](double u) { return u > 0.0 ? 1.0 : 0.0; }));
  g.proj.b1 += d_pre.colwise().sum().transpose();
  g.proj.w1 += cache.h_in.transpose() * d_pre;
  return d_pre * m.proj.w1.transpose();
}

}  // namespace sigma::model
