#pragma once
// FNV-1a 64-bit hashing for corpus fingerprints and deterministic ids.

#include <cstdint>
#include <string_view>

namespace specenc::detail {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace specenc::detail
