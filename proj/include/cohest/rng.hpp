#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cohest {

using Rng = std::mt19937_64;

// splitmix64 finalizer; good avalanche, used to derive independent seed streams.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Positional seed derivation: the stream for a task is a pure function of the
// master seed and the task's coordinates, never of how many tasks ran before it.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t h = mix64(master);
  for (uint64_t p : path) h = mix64(h ^ mix64(p));
  return h;
}

inline Rng make_rng(uint64_t master, std::initializer_list<uint64_t> path) {
  return Rng(derive_seed(master, path));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the implementation-defined
// behaviour of std::uniform_real_distribution so streams are identical across toolchains.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) via rejection sampling.
inline uint64_t uniform_below(Rng& rng, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace cohest
