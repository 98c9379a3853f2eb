#pragma once

#include <cstdint>
#include <random>

namespace otgs {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Engine for substream `stream` of `seed`. Every parallel unit of work draws
/// from its own stream, so scheduling cannot change the output.
inline std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x517cc1b727220a95ULL)));
}

}  // namespace otgs
