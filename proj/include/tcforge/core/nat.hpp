#pragma once

#include <bit>
#include <cstdint>

#include "tcforge/core/error.hpp"

namespace tcforge {

// First-sort values. Arithmetic that leaves 64 bits is reported, never wrapped.
using Nat = std::uint64_t;

inline Nat checked_add(Nat a, Nat b) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("natural overflow in addition");
  return r;
}

inline Nat checked_mul(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("natural overflow in multiplication");
  return r;
}

// Number of binary digits; bit_length(0) = 0.
constexpr Nat bit_length(Nat x) { return static_cast<Nat>(std::bit_width(x)); }

// ceil(log2 n) for n >= 1, and 0 for n = 0.
constexpr Nat ceil_log2(Nat n) { return n <= 1 ? 0 : bit_length(n - 1); }

constexpr Nat ceil_div(Nat a, Nat b) { return a == 0 ? 0 : 1 + (a - 1) / b; }

// Largest s with s*s <= x.
inline Nat isqrt(Nat x) {
  if (x < 2) return x;
  Nat lo = 1, hi = Nat{1} << 32;
  while (hi - lo > 1) {
    Nat mid = lo + (hi - lo) / 2;
    if (mid <= x / mid) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace tcforge
