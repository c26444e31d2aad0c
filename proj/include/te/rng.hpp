#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace te {

// Deterministic random source. The mt19937_64 engine is specified by the
// standard bit-for-bit; the distribution helpers below are hand-rolled
// because the stdlib distribution objects are implementation-defined and
// would break dataset reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), unbiased via rejection.
  uint64_t uniform_int(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll((bound - 1) | 1);
    for (;;) {
      uint64_t v = engine_() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  double lognormal(double mu, double sigma) {
    return std::exp(mu + sigma * normal());
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Stable 64-bit hash of a word sequence; used to derive per-instance seeds
// from the master seed and the instance's dimension indices so any instance
// can be reproduced in isolation.
inline uint64_t stable_hash(std::initializer_list<uint64_t> words) {
  uint64_t h = 0x2545f4914f6cdd1dULL;
  for (uint64_t w : words) h = detail::splitmix64(h ^ w);
  return h;
}

}  // namespace te
