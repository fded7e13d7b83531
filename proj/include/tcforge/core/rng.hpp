#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

namespace tcforge {

// Reproducible generator: std::mt19937_64 plus our own range reduction, so
// sequences do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n); n = 0 yields 0.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (engine_() >> 63) != 0; }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  // Independent child stream for trial `index`.
  Rng fork(std::uint64_t index) const {
    std::uint64_t z = seed_mix(index + 0x9E3779B97F4A7C15ull * (base_ + 1));
    return Rng(z);
  }

  static std::uint64_t seed_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t base_ = engine_();
};

// Seed from TCFORGE_SEED when set, else `fallback`.
inline std::uint64_t default_seed(std::uint64_t fallback = 20240601) {
  if (const char* s = std::getenv("TCFORGE_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
    }
  }
  return fallback;
}

}  // namespace tcforge
