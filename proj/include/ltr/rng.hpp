#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ltr {

// splitmix64; used to stretch one user-facing seed into well-mixed
// per-stage seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic seed for a named stage of a run. Every stage of the
// pipeline derives its RNG from the global seed this way.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stage) {
  return mix64(global_seed ^ fnv1a(stage));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(mix64(seed)); }

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi_inclusive) {
  const auto span = static_cast<std::uint64_t>(hi_inclusive - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

// Box-Muller; two uniforms per draw keeps the stream layout obvious.
inline double normal(std::mt19937_64& rng, double mean = 0.0, double stddev = 1.0) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  return mean + stddev * z;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace ltr
