#pragma once

#include <utility>

#include "tcforge/core/nat.hpp"

namespace tcforge {

// <x,y> = (x+y)(x+y+1) + 2y. Its image is exactly the even naturals.
inline Nat pair(Nat x, Nat y) {
  const Nat s = checked_add(x, y);
  return checked_add(checked_mul(s, checked_add(s, 1)), checked_mul(2, y));
}

// <x1,...,xk> = <<x1,...,x(k-1)>, xk>
inline Nat pair(Nat x, Nat y, Nat z) { return pair(pair(x, y), z); }

inline std::pair<Nat, Nat> unpair(Nat p) {
  if (p % 2 != 0) throw DomainError("not a pair code: " + std::to_string(p));
  // largest s with s(s+1) <= p
  Nat s = isqrt(p);
  while (s > 0 && s * (s + 1) > p) --s;
  while ((s + 1) * (s + 2) <= p) ++s;
  const Nat y = (p - s * (s + 1)) / 2;
  if (y > s) throw DomainError("not a pair code: " + std::to_string(p));
  const Nat x = s - y;
  if (pair(x, y) != p) throw DomainError("not a pair code: " + std::to_string(p));
  return {x, y};
}

}  // namespace tcforge
