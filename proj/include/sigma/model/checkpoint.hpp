//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_MODEL_CHECKPOINT_HPP
#define SIGMA_MODEL_CHECKPOINT_HPP

#include <string>

#include "sigma/model/net.hpp"

namespace sigma::model {

// Single-file binary checkpoint: magic, format version, a JSON header
// (model config, vocabulary, tensor manifest), then raw little-endian
// IEEE-754 doubles for every tensor in declared order.
inline constexpr char kCheckpointMagic[8] = {'S', 'G', 'M', 'A',
                                             'C', 'K', 'P', '1'};

struct Checkpoint {
  ModelParams params;
  Vocab vocab;
};

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const Vocab& vocab);

// Throws std::runtime_error on bad magic, version, or shape mismatch.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace sigma::model

#endif  // SIGMA_MODEL_CHECKPOINT_HPP
