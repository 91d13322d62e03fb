#pragma once

#include <cstdint>
#include <random>

#include "seqlab/scalar.hpp"

namespace seqlab {

/// splitmix64 finalizer; used to derive independent per-sample seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(master ^ splitmix64(stream));
}

/// mt19937_64 with hand-rolled distributions, so draws are identical across
/// standard libraries (std::uniform_real_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Random rational num/den in (0, 1) with den in [2, max_den].
  Rational unit_rational(std::uint64_t max_den) {
    const std::uint64_t den = 2 + below(max_den - 1);
    const std::uint64_t num = 1 + below(den - 1);
    Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace seqlab
