//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_UTIL_RNG_HPP
#define SIGMA_UTIL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "sigma/util/hash.hpp"

namespace sigma::util {

// All randomness in the toolkit flows from one root seed. Components derive
// independent streams by name, so adding a consumer never perturbs another
// component's draws.
class SeedSequence {
 public:
  explicit SeedSequence(std::uint64_t root) : root_(root) {}

  std::uint64_t derive(std::string_view stream_name) const {
    return mix64(root_ ^ fnv1a(stream_name));
  }

  std::mt19937_64 stream(std::string_view stream_name) const {
    return std::mt19937_64(derive(stream_name));
  }

  std::uint64_t root() const { return root_; }

 private:
  std::uint64_t root_;
};

using RandomEngine = std::mt19937_64;

// Uniform double in [0, 1) with a pinned bit recipe; standard-library
// distributions are implementation-defined and would break seed stability.
inline double uniform01(RandomEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller, one value per call (the pair's second half is discarded to
// keep the draw sequence position-independent).
inline double gaussian(RandomEngine& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace sigma::util

#endif  // SIGMA_UTIL_RNG_HPP
