#pragma once

#include <cstdint>

namespace hypsite {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Midpoint of one of 2^52 equal cells of (0,1): never 0 or 1, and 1 - u is
// again exactly such a midpoint.
constexpr double unit_from_bits(std::uint64_t bits) {
  const std::uint64_t k = bits >> 12;
  return (static_cast<double>(k) + 0.5) * 0x1p-52;
}

// Counter-based hash of (seed, counter) to a uniform in (0,1).
constexpr double hashed_uniform(std::uint64_t seed, std::uint64_t counter) {
  return unit_from_bits(mix64(mix64(seed) + (counter + 1) * kGoldenGamma));
}

// Seed of replica r of a run seeded with `seed`.
constexpr std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t r) {
  return mix64(seed + (r + 1) * 0xd1b54a32d192ed03ULL);
}

}  // namespace hypsite
