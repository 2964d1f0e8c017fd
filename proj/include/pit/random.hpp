#pragma once

#include <cstdint>

#include "pit/field.hpp"

namespace pit {

/// splitmix64 (Steele, Lea, Flood). State advances by the golden-ratio
/// increment before each output, so a stream is fully determined by its seed.
class SplitMix64 {
 public:
  explicit SplitMix64(u64 seed) : state_(seed) {}

  u64 next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    u64 z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection: draws at or above the largest
  /// multiple of bound below 2^64 are discarded.
  u64 below(u64 bound) {
    const u64 limit = bound * (~u64{0} / bound);
    u64 x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  u64 between(u64 lo, u64 hi) { return lo + below(hi - lo + 1); }

  FieldElement element(const PrimeField& F) {
    return FieldElement{below(F.modulus())};
  }

  u64 state() const { return state_; }

 private:
  u64 state_;
};

}  // namespace pit
