// Seed derivation for reproducible, order-independent parallel streams.
#pragma once

#include <cstdint>
#include <random>

namespace qae {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for task `index` of a stream identified by (seed, salt).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt,
                                    std::uint64_t index) {
  return mix64(mix64(seed ^ mix64(salt)) + index);
}

using Rng = std::mt19937_64;

}  // namespace qae
