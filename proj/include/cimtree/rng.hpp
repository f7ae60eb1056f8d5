#pragma once

// Seeded mt19937_64 streams. A stream seed is a SplitMix64 hash of the master
// seed and a path of integers (stream id, trial, sample size, ...), so each
// consumer owns an independent, reproducible generator.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cimtree {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t x : path) h = splitmix64(h ^ splitmix64(x + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {}) {
  return Rng(derive_seed(seed, path));
}

// top bit of one draw
inline bool coin(Rng& rng) {
  return (rng() >> 63) != 0;
}

}  // namespace cimtree
