//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/model/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sigma/model/loss.hpp"

namespace sigma::model {

using nlohmann::json;

EncodedPair encode_pair(const views::ViewPair& pair,
                        std::span<const std::string> negative_prefixes,
                        const Vocab& vocab) {
  std::vector<int> suffix_ids = vocab.encode(pair.suffix);
  auto build = [&](const std::string& prefix, bool with_eos) {
    EncodedSeq seq;
    std::vector<int> prefix_ids = vocab.encode(prefix);
    std::vector<int> joined = vocab.encode(prefix + pair.suffix);
    std::vector<int> expect = prefix_ids;
    expect.insert(expect.end(), suffix_ids.begin(), suffix_ids.end());
    if (joined != expect) {
      throw std::logic_error(
          "suffix alignment violated: concatenation re-tokenizes differently");
    }
    seq.ids.push_back(Vocab::kBos);
    seq.ids.insert(seq.ids.end(), joined.begin(), joined.end());
    if (with_eos) seq.ids.push_back(Vocab::kEos);
    seq.suffix_start = 1 + static_cast<int>(prefix_ids.size());
    return seq;
  };
  EncodedPair enc;
  enc.suffix_len = static_cast<int>(suffix_ids.size());
  enc.u = build(pair.prefix_u, true);
  enc.v = build(pair.prefix_v, true);
  for (const std::string& neg : negative_prefixes) {
    enc.negs.push_back(build(neg, false));
  }
  return enc;
}

namespace {

struct SeqWork {
  ForwardResult fwd;
  MatrixXd dlogits;        // empty when absent
  MatrixXd dhidden_extra;  // empty when absent
};

MatrixXd suffix_rows(const MatrixXd& hidden, const EncodedSeq& seq, int len) {
  return hidden.middleRows(seq.suffix_start, len);
}

}  // namespace

BatchLossReport compute_batch(const ModelParams& m,
                              std::span<const EncodedPair> batch, double lambda,
                              double tau, bool strict_negatives,
                              GradBuffers* grads) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  BatchLossReport report;

  for (const EncodedPair& pair : batch) {
    report.nll_positions += static_cast<int>(pair.u.ids.size()) - 1;
    report.nll_positions += static_cast<int>(pair.v.ids.size()) - 1;
    if (!pair.negs.empty()) ++report.sigma_pairs;
    if (strict_negatives && pair.negs.empty() && lambda > 0.0) {
      throw std::invalid_argument("pair without usable negatives in strict mode");
    }
  }
  double inv_positions = 1.0 / static_cast<double>(report.nll_positions);
  bool use_sigma = lambda > 0.0 && report.sigma_pairs > 0;
  double sigma_scale = use_sigma ? 1.0 / report.sigma_pairs : 0.0;

  double nll_sum = 0.0;
  double sigma_sum = 0.0;
  bool need_grads = grads != nullptr;

  for (const EncodedPair& pair : batch) {
    SeqWork wu, wv;
    wu.fwd = forward(m, pair.u.ids, need_grads);
    wv.fwd = forward(m, pair.v.ids, need_grads);

    // Next-token NLL for both views; the last position has no target.
    for (SeqWork* w : {&wu, &wv}) {
      const std::vector<int>& ids =
          (w == &wu) ? pair.u.ids : pair.v.ids;
      Eigen::Index L = static_cast<Eigen::Index>(ids.size());
      std::vector<int> targets(L, 0);
      std::vector<unsigned char> mask(L, 0);
      for (Eigen::Index t = 0; t + 1 < L; ++t) {
        targets[t] = ids[t + 1];
        mask[t] = 1;
      }
      MatrixXd dlog;
      double mean_nll =
          loss_nll(w->fwd.logits, targets, mask, need_grads ? &dlog : nullptr);
      double count = static_cast<double>(L - 1);
      nll_sum += mean_nll * count;
      if (need_grads) w->dlogits = dlog * (count * inv_positions);
    }

    // Dense trajectory alignment on the shared suffix.
    std::vector<SeqWork> wnegs(pair.negs.size());
    if (use_sigma && !pair.negs.empty()) {
      ProjectionCache cu, cv;
      std::vector<ProjectionCache> cnegs(pair.negs.size());
      MatrixXd zu = project(
          m, suffix_rows(wu.fwd.hidden, pair.u, pair.suffix_len), &cu);
      MatrixXd zv = project(
          m, suffix_rows(wv.fwd.hidden, pair.v, pair.suffix_len), &cv);
      std::vector<MatrixXd> znegs;
      std::vector<unsigned char> usable;
      for (std::size_t k = 0; k < pair.negs.size(); ++k) {
        wnegs[k].fwd = forward(m, pair.negs[k].ids, need_grads);
        znegs.push_back(project(
            m, suffix_rows(wnegs[k].fwd.hidden, pair.negs[k], pair.suffix_len),
            &cnegs[k]));
        usable.push_back(1);
      }
      SigmaGrads sg;
      SigmaTerms terms =
          loss_sigma(zu, zv, znegs, usable, tau, need_grads ? &sg : nullptr);
      sigma_sum += terms.mean;

      if (need_grads) {
        double w = lambda * sigma_scale;
        auto to_hidden = [&](ProjectionCache& cache, const MatrixXd& dz,
                             const EncodedSeq& seq, SeqWork& work) {
          MatrixXd dh = project_backward(m, cache, dz * w, *grads);
          work.dhidden_extra = MatrixXd::Zero(
              static_cast<Eigen::Index>(seq.ids.size()), m.cfg.d_model);
          work.dhidden_extra.middleRows(seq.suffix_start, pair.suffix_len) = dh;
        };
        to_hidden(cu, sg.d_zu, pair.u, wu);
        to_hidden(cv, sg.d_zv, pair.v, wv);
        for (std::size_t k = 0; k < pair.negs.size(); ++k) {
          to_hidden(cnegs[k], sg.d_znegs[k], pair.negs[k], wnegs[k]);
        }
      }
    }

    if (need_grads) {
      backward(m, wu.fwd.cache, wu.dlogits, wu.dhidden_extra, *grads);
      backward(m, wv.fwd.cache, wv.dlogits, wv.dhidden_extra, *grads);
      for (SeqWork& wn : wnegs) {
        if (wn.dhidden_extra.size() != 0) {
          backward(m, wn.fwd.cache, MatrixXd(), wn.dhidden_extra, *grads);
        }
      }
    }
  }

  report.nll = nll_sum * inv_positions;
  report.sigma = use_sigma ? sigma_sum * sigma_scale : 0.0;
  report.total = loss_total(report.nll, report.sigma, lambda);
  return report;
}

double schedule_lr(double peak, int step, int warmup_steps, int total_steps) {
  if (step <= warmup_steps) {
    return peak * static_cast<double>(step) / static_cast<double>(warmup_steps);
  }
  if (step >= total_steps) return 0.0;
  double progress = static_cast<double>(step - warmup_steps) /
                    static_cast<double>(total_steps - warmup_steps);
  return peak * 0.5 * (1.0 + std::cos(M_PI * progress));
}

namespace {

class AdamW {
 public:
  AdamW(ModelParams& params, const TrainConfig& cfg)
      : params_(params), cfg_(cfg) {
    Eigen::Index n = params.parameter_count();
    m_.setZero(n);
    v_.setZero(n);
  }

  void step(GradBuffers& grads, double lr) {
    ++t_;
    double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
    double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
    Eigen::Index offset = 0;
    std::vector<TensorView> pv = params_.tensor_views();
    std::vector<TensorView> gv = grads.tensor_views();
    for (std::size_t i = 0; i < pv.size(); ++i) {
      Eigen::Index n = pv[i].size();
      Eigen::Map<VectorXd> theta(pv[i].data, n);
      Eigen::Map<const VectorXd> g(gv[i].data, n);
      auto m = m_.segment(offset, n);
      auto v = v_.segment(offset, n);
      m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
      v = cfg_.beta2 * v.array().matrix() +
          (1.0 - cfg_.beta2) * g.array().square().matrix();
      VectorXd update =
          (m / bc1).array() / ((v / bc2).array().sqrt() + cfg_.adam_eps);
      // Decoupled decay on weight matrices; vectors (biases, norm scales)
      // are left undecayed.
      if (pv[i].cols > 1) update += cfg_.weight_decay * theta;
      theta -= lr * update;
      offset += n;
    }
  }

 private:
  ModelParams& params_;
  const TrainConfig& cfg_;
  VectorXd m_, v_;
  int t_ = 0;
};

double validation_tis(const ModelParams& m, const Vocab& vocab,
                      std::span<const views::ViewPair> val_pairs) {
  double total = 0.0;
  for (const views::ViewPair& pair : val_pairs) {
    VectorXd a = encode_prefix(m, vocab, pair.prefix_u);
    VectorXd b = encode_prefix(m, vocab, pair.prefix_v);
    total += 1.0 - a.dot(b);
  }
  return total / static_cast<double>(val_pairs.size());
}

}  // namespace

TrainResult train(const TrainConfig& config,
                  const std::vector<views::ViewPair>& pairs, const Vocab& vocab,
                  std::ostream* log_jsonl) {
  if (pairs.empty()) throw std::invalid_argument("empty pair dataset");
  TrainConfig cfg = config;
  cfg.model.vocab_size = vocab.size();
  cfg.model.validate();

  int n_val = static_cast<int>(std::floor(cfg.val_fraction * pairs.size()));
  int n_train = static_cast<int>(pairs.size()) - n_val;
  if (n_train <= 0) throw std::invalid_argument("no training pairs after split");
  std::span<const views::ViewPair> train_pairs(pairs.data(), n_train);
  std::span<const views::ViewPair> val_pairs(pairs.data() + n_train, n_val);

  util::SeedSequence seeds(cfg.seed);
  util::RandomEngine shuffle_rng = seeds.stream("train.shuffle");
  util::RandomEngine neg_rng = seeds.stream("train.negatives");

  TrainResult result;
  result.vocab = vocab;
  result.params = ModelParams::init(cfg.model, seeds.derive("train.init"));
  ModelParams& params = result.params;

  int steps_per_epoch = (n_train + cfg.batch_size - 1) / cfg.batch_size;
  int total_steps = std::max(1, cfg.epochs * steps_per_epoch);
  int warmup = cfg.warmup_steps >= 0 ? cfg.warmup_steps
                                     : std::max(1, total_steps / 20);

  AdamW optimizer(params, cfg);
  GradBuffers grads(cfg.model);
  ModelParams snapshot = params;

  std::vector<int> order(n_train);
  std::iota(order.begin(), order.end(), 0);

  int step = 0;
  for (int epoch = 0; epoch < cfg.epochs && !result.aborted; ++epoch) {
    snapshot = params;
    for (int i = n_train - 1; i > 0; --i) {
      int j = static_cast<int>(shuffle_rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[i], order[j]);
    }

    for (int start = 0; start < n_train; start += cfg.batch_size) {
      int count = std::min(cfg.batch_size, n_train - start);
      std::vector<views::ViewPair> batch_pairs;
      batch_pairs.reserve(count);
      for (int i = 0; i < count; ++i) {
        batch_pairs.push_back(train_pairs[order[start + i]]);
      }

      std::vector<EncodedPair> encoded;
      encoded.reserve(count);
      for (int i = 0; i < count; ++i) {
        std::vector<std::string> neg_prefixes;
        if (cfg.lambda > 0.0 && count > 1) {
          views::NegativeSet negs = views::sample_negatives(
              batch_pairs, i, cfg.max_negatives, neg_rng);
          for (std::size_t k = 0; k < negs.prefixes.size(); ++k) {
            if (negs.usable[k]) neg_prefixes.push_back(negs.prefixes[k]);
          }
        }
        encoded.push_back(encode_pair(batch_pairs[i], neg_prefixes, vocab));
      }

      grads.zero();
      BatchLossReport report = compute_batch(
          params, encoded, cfg.lambda, cfg.tau, cfg.strict_negatives, &grads);
      if (!std::isfinite(report.total)) {
        params = snapshot;
        result.aborted = true;
        result.abort_reason = "non-finite loss at step " + std::to_string(step + 1);
        break;
      }

      double gnorm = grads.global_norm();
      if (cfg.clip_norm > 0.0 && gnorm > cfg.clip_norm) {
        double scale = cfg.clip_norm / gnorm;
        for (TensorView& t : grads.tensor_views()) {
          Eigen::Map<VectorXd>(t.data, t.size()) *= scale;
        }
      }

      ++step;
      double lr = schedule_lr(cfg.peak_lr, step, warmup, total_steps);
      optimizer.step(grads, lr);

      result.final_nll = report.nll;
      result.final_sigma = report.sigma;
      result.final_total = report.total;
      result.steps_run = step;
      if (log_jsonl != nullptr) {
        json row{{"epoch", epoch},   {"step", step},
                 {"nll", report.nll}, {"sigma", report.sigma},
                 {"total", report.total}, {"lr", lr},
                 {"grad_norm", gnorm}};
        (*log_jsonl) << row.dump() << '\n';
      }
    }

    if (!result.aborted && !val_pairs.empty()) {
      double tis = validation_tis(params, vocab, val_pairs);
      result.final_val_tis = tis;
      if (log_jsonl != nullptr) {
        json row{{"epoch", epoch}, {"val_tis", tis}};
        (*log_jsonl) << row.dump() << '\n';
      }
    }
  }
  return result;
}

}  // namespace sigma::model
