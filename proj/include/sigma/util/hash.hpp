//
// Copyright 2026 the sigma-toolkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SIGMA_UTIL_HASH_HPP
#define SIGMA_UTIL_HASH_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace sigma::util {

// FNV-1a, used for content digests and fingerprint hashing. std::hash is
// implementation-defined, so anything that lands in a file goes through this.
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a(std::string_view bytes,
                              std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

constexpr std::uint64_t fnv1a_u64(std::uint64_t value,
                                  std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (int i = 0; i < 8; ++i) {
    h ^= value & 0xffU;
    h *= kFnvPrime;
    value >>= 8;
  }
  return h;
}

// splitmix64 finalizer; decent avalanche for combining small integer tuples.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

std::string hex_digest(std::uint64_t h);

// Digest of a file's raw bytes, "fnv1a64:<hex>". Throws on I/O failure.
std::string file_digest(const std::string& path);

}  // namespace sigma::util

#endif  // SIGMA_UTIL_HASH_HPP
