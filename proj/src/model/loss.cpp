//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/model/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace sigma::model {

double loss_nll(const MatrixXd& logits, std::span<const int> targets,
                std::span<const unsigned char> mask, MatrixXd* dlogits) {
  Eigen::Index L = logits.rows();
  if (static_cast<Eigen::Index>(targets.size()) != L ||
      static_cast<Eigen::Index>(mask.size()) != L) {
    throw std::invalid_argument("loss_nll shape mismatch");
  }
  Eigen::Index counted = 0;
  for (unsigned char m : mask) counted += m ? 1 : 0;
  if (counted == 0) throw std::invalid_argument("all positions masked");

  if (dlogits != nullptr) dlogits->setZero(L, logits.cols());
  double total = 0.0;
  double weight = 1.0 / static_cast<double>(counted);
  for (Eigen::Index t = 0; t < L; ++t) {
    if (!mask[t]) continue;
    int y = targets[t];
    if (y < 0 || y >= logits.cols()) {
      throw std::invalid_argument("target id out of range");
    }
    double mx = logits.row(t).maxCoeff();
    Eigen::Array<double, 1, Eigen::Dynamic> e =
        (logits.row(t).array() - mx).exp();
    double z = e.sum();
    total += (std::log(z) + mx) - logits(t, y);
    if (dlogits != nullptr) {
      dlogits->row(t) = (e / z).matrix() * weight;
      (*dlogits)(t, y) -= weight;
    }
  }
  return total * weight;
}

SigmaTerms loss_sigma(const MatrixXd& z_u, const MatrixXd& z_v,
                      std::span<const MatrixXd> z_negs,
                      std::span<const unsigned char> usable, double tau,
                      SigmaGrads* grads) {
  if (tau <= 0.0) throw std::invalid_argument("temperature must be positive");
  if (z_u.rows() != z_v.rows() || z_u.cols() != z_v.cols()) {
    throw std::invalid_argument("view projections must be suffix-aligned");
  }
  if (usable.size() != z_negs.size()) {
    throw std::invalid_argument("negative mask size mismatch");
  }
  Eigen::Index L = z_u.rows();
  if (L == 0) throw std::invalid_argument("empty suffix");

  std::vector<int> active;
  for (std::size_t k = 0; k < z_negs.size(); ++k) {
    if (!usable[k]) continue;
    if (z_negs[k].rows() != L || z_negs[k].cols() != z_u.cols()) {
      throw std::invalid_argument("negative projections must be suffix-aligned");
    }
    active.push_back(static_cast<int>(k));
  }
  if (active.empty()) {
    throw std::invalid_argument("no usable negatives for sigma term");
  }

  if (grads != nullptr) {
    grads->d_zu.setZero(L, z_u.cols());
    grads->d_zv.setZero(L, z_u.cols());
    grads->d_znegs.assign(z_negs.size(), MatrixXd());
    for (int k : active) grads->d_znegs[k].setZero(L, z_u.cols());
  }

  SigmaTerms out;
  out.per_token.resize(L);
  double inv_tau = 1.0 / tau;
  double inv_len = 1.0 / static_cast<double>(L);
  double total = 0.0;

  for (Eigen::Index t = 0; t < L; ++t) {
    double a = z_u.row(t).dot(z_v.row(t)) * inv_tau;
    Eigen::ArrayXd b(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
      b(i) = z_u.row(t).dot(z_negs[active[i]].row(t)) * inv_tau;
    }
    double mx = std::max(a, b.maxCoeff());
    double denom = std::exp(a - mx) + (b - mx).exp().sum();
    double log_denom = mx + std::log(denom);
    double term = log_denom - a;
    out.per_token[t] = term;
    total += term;

    if (grads != nullptr) {
      double p_pos = std::exp(a - log_denom);
      // d(term)/d(sim_uv) = (p_pos - 1)/tau, d(term)/d(sim_uk) = p_k/tau;
      // scaled by the per-pair mean.
      double w = inv_tau * inv_len;
      grads->d_zv.row(t) += (p_pos - 1.0) * w * z_u.row(t);
      Eigen::RowVectorXd du = (p_pos - 1.0) * w * z_v.row(t);
      for (std::size_t i = 0; i < active.size(); ++i) {
        double p_k = std::exp(b(i) - log_denom);
        du += p_k * w * z_negs[active[i]].row(t);
        grads->d_znegs[active[i]].row(t) += p_k * w * z_u.row(t);
      }
      grads->d_zu.row(t) += du;
    }
  }
  out.mean = total * inv_len;
  return out;
}

double loss_total(double nll, double sigma, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  return nll + lambda * sigma;
}

}  // namespace sigma::model
