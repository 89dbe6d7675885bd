#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace permcorr {

// Seeded generator for all randomized scans and samplers. Draws are built
// directly from mt19937_64 output (std::*_distribution is implementation
// defined and would break bit-exact report reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    uint64_t threshold = (0 - bound) % bound;  // rejection zone
    for (;;) {
      uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  /// 53-bit uniform in [0, 1).
  double real01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real01() < p; }

  /// Derives an independent stream (one per worker / per measure).
  Rng split() {
    uint64_t s = gen_() ^ 0x9e3779b97f4a7c15ull;
    return Rng(s);
  }

 private:
  std::mt19937_64 gen_;
};

/// Stateless per-index stream derivation (splitmix64 finalizer). Work items
/// seeded this way draw identical values no matter how they are scheduled
/// across workers.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace permcorr
