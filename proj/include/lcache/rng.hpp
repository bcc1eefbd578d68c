#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lcache {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent child seed from a parent seed and a single-char tag.
// Used wherever one logical seed has to drive several RNG streams.
inline std::uint64_t mix_seed(std::uint64_t seed, char tag) {
  return splitmix64(seed ^ (0x100000001b3ULL * static_cast<unsigned char>(tag)));
}

// Uniform integer in [0, n) via multiply-shift. Bias is < n / 2^64, which is
// irrelevant for the n <= few thousand used here, and the result does not
// depend on the standard library's distribution implementation.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(gen()) * n) >> 64);
}

// Uniform double in [0, 1) with 53 bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller on explicit uniforms.
inline double std_normal(std::mt19937_64& gen) {
  double u1 = uniform01(gen);
  double u2 = uniform01(gen);
  if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Geometric with success probability p, support {1, 2, ...}.
inline std::int64_t geometric(std::mt19937_64& gen, double p) {
  if (p >= 1.0) return 1;
  double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  double v = std::ceil(std::log1p(-u) / std::log1p(-p));
  if (v < 1.0) return 1;
  return static_cast<std::int64_t>(v);
}

}  // namespace lcache
