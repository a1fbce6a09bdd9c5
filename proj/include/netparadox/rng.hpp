#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace netparadox {

// Uniform and normal variates are built directly on the engine's 64-bit
// output so that a seed yields the same stream with every standard library.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sub-seed for stream `stream` of a master seed. Used for per-trial and
/// per-run streams so results do not depend on execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix64(mix64(master) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(std::uint64_t seed) { return Engine{mix64(seed)}; }

/// Uniform on the open interval (0, 1).
inline double uniform_open01(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform on [lo, hi).
inline double uniform_real(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
}

__extension__ using uint128 = unsigned __int128;

/// Unbiased integer in [0, n), n > 0 (Lemire's multiply-and-reject).
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  uint128 m = static_cast<uint128>(eng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<uint128>(eng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Standard normal via Box-Muller; consumes two uniforms per call.
inline double standard_normal(Engine& eng) {
  const double u1 = uniform_open01(eng);
  const double u2 = uniform_open01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// In-place Fisher-Yates shuffle.
template <class RandomIt>
void shuffle_range(RandomIt first, RandomIt last, Engine& eng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = uniform_index(eng, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace netparadox
