#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace emln {

// All randomness flows through std::mt19937_64, whose output sequence is fixed
// by the standard. The std:: distributions are implementation-defined, so the
// two draws the simulator needs are written out here instead.
using Rng = std::mt19937_64;

// SplitMix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed: splitmix64(base ^ splitmix64(index)).
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(base ^ splitmix64(index));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection; n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % bound);
}

}  // namespace emln
