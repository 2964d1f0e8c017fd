#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

#include "pit/errors.hpp"

namespace pit {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kDefaultPrime = 2147483647ULL;  // 2^31 - 1

/// Residue modulo the prime of some PrimeField; always in [0, p).
struct FieldElement {
  u64 value = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(u64 v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline std::ostream& operator<<(std::ostream& os, FieldElement a) {
  return os << a.value;
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Arithmetic context for F_p. Cheap to copy.
class PrimeField {
 public:
  /// Throws InvalidArgument unless p is prime.
  explicit PrimeField(u64 p = kDefaultPrime);

  u64 modulus() const { return p_; }

  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }

  FieldElement from_u64(u64 v) const { return FieldElement{v % p_}; }
  FieldElement from_i64(std::int64_t v) const {
    if (v >= 0) return from_u64(static_cast<u64>(v));
    u64 m = static_cast<u64>(-(v + 1)) % p_;  // avoids overflow at INT64_MIN
    return FieldElement{p_ - 1 - m};
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    u64 s = a.value + b.value;
    if (s >= p_ || s < a.value) s -= p_;
    return FieldElement{s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    return FieldElement{a.value >= b.value ? a.value - b.value
                                           : a.value + (p_ - b.value)};
  }
  FieldElement neg(FieldElement a) const {
    return FieldElement{a.value == 0 ? 0 : p_ - a.value};
  }
  FieldElement mul(FieldElement a, FieldElement b) const {
    return FieldElement{
        static_cast<u64>(static_cast<u128>(a.value) * b.value % p_)};
  }
  FieldElement pow(FieldElement a, u64 e) const;

  /// Throws ZeroInverse on a = 0.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const {
    return mul(a, inv(b));
  }

  /// Signed value in (-p/2, p/2], used for display.
  std::int64_t centered(FieldElement a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  u64 p_;
};

}  // namespace pit
