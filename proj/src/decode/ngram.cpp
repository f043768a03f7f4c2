//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sigma/decode/ngram.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigma/util/hash.hpp"

namespace sigma::decode {

namespace {

std::uint64_t context_hash(std::span<const int> context) {
  std::uint64_t h = util::kFnvOffset;
  for (int id : context) {
    h = util::hash_combine(h, static_cast<std::uint64_t>(id) + 1);
  }
  return h;
}

}  // namespace

NGramScorer NGramScorer::fit(const std::vector<std::string>& corpus,
                             const model::Vocab& vocab, int order,
                             double k_smooth) {
  if (corpus.empty()) throw std::invalid_argument("empty n-gram corpus");
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (k_smooth <= 0.0) throw std::invalid_argument("add-k constant must be > 0");

  NGramScorer s;
  s.order_ = order;
  s.k_smooth_ = k_smooth;
  s.vocab_size_ = vocab.size();
  for (int id = 0; id < vocab.size(); ++id) {
    if (id != model::Vocab::kPad && id != model::Vocab::kBos) {
      s.support_.push_back(id);
    }
  }
  s.counts_.resize(order);

  for (const std::string& smiles : corpus) {
    std::vector<int> ids(order - 1, model::Vocab::kBos);
    for (int id : vocab.encode(smiles)) ids.push_back(id);
    ids.push_back(model::Vocab::kEos);
    for (std::size_t t = static_cast<std::size_t>(order) - 1; t < ids.size(); ++t) {
      int target = ids[t];
      for (int len = 0; len < order; ++len) {
        std::span<const int> ctx(ids.data() + t - len, len);
        ContextCounts& cc = s.counts_[len][context_hash(ctx)];
        cc.total += 1.0;
        cc.by_id[target] += 1.0;
      }
    }
  }
  return s;
}

double NGramScorer::prob(std::span<const int> context, int id) const {
  // P_0 is add-k over the support; each longer context interpolates its
  // counts with the shorter distribution using alpha = k * |support|.
  double alpha = k_smooth_ * static_cast<double>(support_.size());
  auto it0 = counts_[0].find(context_hash(std::span<const int>()));
  double p = k_smooth_;
  double denom0 = alpha;
  if (it0 != counts_[0].end()) {
    auto hit = it0->second.by_id.find(id);
    p += hit == it0->second.by_id.end() ? 0.0 : hit->second;
    denom0 += it0->second.total;
  }
  p /= denom0;

  for (int len = 1; len < order_; ++len) {
    std::span<const int> ctx = context.subspan(context.size() - len, len);
    auto it = counts_[len].find(context_hash(ctx));
    double count = 0.0;
    double total = 0.0;
    if (it != counts_[len].end()) {
      auto hit = it->second.by_id.find(id);
      count = hit == it->second.by_id.end() ? 0.0 : hit->second;
      total = it->second.total;
    }
    p = (count + alpha * p) / (total + alpha);
  }
  return p;
}

Eigen::VectorXd NGramScorer::log_probs(std::span<const int> prefix_ids) const {
  std::vector<int> padded(order_ - 1, model::Vocab::kBos);
  padded.insert(padded.end(), prefix_ids.begin(), prefix_ids.end());
  std::span<const int> context(padded.data() + padded.size() - (order_ - 1),
                               order_ - 1);

  Eigen::VectorXd out = Eigen::VectorXd::Constant(
      vocab_size_, -std::numeric_limits<double>::infinity());
  for (int id : support_) {
    out(id) = std::log(prob(context, id));
  }
  return out;
}

}  // namespace sigma::decode
