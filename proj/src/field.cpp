#include "pit/field.hpp"

#include <array>
#include <string>

namespace pit {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kSmall = {2,  3,  5,  7,  11, 13,
                                                 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are a proven witness set for n < 3.3e24.
  for (u64 a : kSmall) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (!is_prime(p)) {
    throw InvalidArgument("field modulus " + std::to_string(p) +
                          " is not prime");
  }
}

FieldElement PrimeField::pow(FieldElement a, u64 e) const {
  return FieldElement{powmod(a.value, e, p_)};
}

FieldElement PrimeField::inv(FieldElement a) const {
  if (a.is_zero()) throw ZeroInverse();
  // Fermat: a^(p-2).
  return pow(a, p_ - 2);
}

std::int64_t PrimeField::centered(FieldElement a) const {
  if (a.value <= p_ / 2) return static_cast<std::int64_t>(a.value);
  return -static_cast<std::int64_t>(p_ - a.value);
}

}  // namespace pit
