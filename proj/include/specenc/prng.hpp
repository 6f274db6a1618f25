#pragma once
// Deterministic random numbers: every stochastic routine in the project
// takes an explicit seed, defaulting to kDefaultSeed, so repeated runs with
// identical inputs produce identical output streams.

#include <cstdint>
#include <random>

namespace specenc {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEEULL;

inline std::mt19937_64 make_rng(std::uint64_t seed = kDefaultSeed) {
  return std::mt19937_64(seed);
}

}  // namespace specenc
