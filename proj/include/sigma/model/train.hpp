//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_TRAIN_HPP
#define SIGMA_MODEL_TRAIN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigma/model/backward.hpp"
#include "sigma/model/net.hpp"
#include "sigma/views/pair.hpp"

namespace sigma::model {

struct TrainConfig {
  ModelConfig model;  // vocab_size is overwritten from the vocabulary
  double lambda = 0.5;
  double tau = 0.1;
  int epochs = 4;
  int batch_size = 64;  // molecules per step; each contributes two views
  double peak_lr = 5e-4;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double clip_norm = 1.0;
  int warmup_steps = -1;  // < 0: 5% of total optimizer steps
  int max_negatives = 7;
  bool strict_negatives = false;
  double val_fraction = 0.0;  // held-out tail of the pair dataset
  std::uint64_t seed = 0;
};

// One tokenized view sequence: [BOS] prefix suffix [EOS] for the two views,
// [BOS] prefix suffix for negatives. suffix_start indexes the first suffix
// token's position.
struct EncodedSeq {
  std::vector<int> ids;
  int suffix_start = 0;
};

struct EncodedPair {
  EncodedSeq u;
  EncodedSeq v;
  std::vector<EncodedSeq> negs;  // usable negatives only
  int suffix_len = 0;
};

// Tokenizes a pair and its negatives, enforcing the suffix-alignment
// invariant (identical suffix token ids at aligned positions in every
// sequence). Throws std::logic_error when a concatenation tokenizes
// differently from its parts.
EncodedPair encode_pair(const views::ViewPair& pair,
                        std::span<const std::string> negative_prefixes,
                        const Vocab& vocab);

struct BatchLossReport {
  double nll = 0.0;
  double sigma = 0.0;
  double total = 0.0;
  int nll_positions = 0;
  int sigma_pairs = 0;  // pairs that contributed a sigma term
};

// Loss (and optionally gradients) over a batch of encoded pairs: mean NLL
// over all non-pad target positions of the 2N view sequences, plus
// lambda times the mean per-pair sigma term. Siamese: one parameter set
// serves every sequence.
BatchLossReport compute_batch(const ModelParams& m,
                              std::span<const EncodedPair> batch, double lambda,
                              double tau, bool strict_negatives,
                              GradBuffers* grads);

struct TrainResult {
  ModelParams params;
  Vocab vocab;
  bool aborted = false;
  std::string abort_reason;
  int steps_run = 0;
  double final_nll = 0.0;
  double final_sigma = 0.0;
  double final_total = 0.0;
  std::optional<double> final_val_tis;
};

// Full training loop: AdamW (decoupled weight decay), linear warmup then
// cosine decay, global-norm clipping. Emits one JSONL row per step
// {epoch, step, nll, sigma, total, lr, grad_norm} and one per epoch with
// validation TIS when a validation split exists. On a non-finite loss the
// run aborts and returns the last epoch-start snapshot.
TrainResult train(const TrainConfig& config,
                  const std::vector<views::ViewPair>& pairs, const Vocab& vocab,
                  std::ostream* log_jsonl);

double schedule_lr(double peak, int step, int warmup_steps, int total_steps);

}  // namespace sigma::model

#endif  // SIGMA_MODEL_TRAIN_HPP
