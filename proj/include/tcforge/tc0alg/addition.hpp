#pragma once

#include <algorithm>

#include "tcforge/kernel/bitset.hpp"

namespace tcforge::tc0alg {

// Some j < i generates (X(j) & Y(j)) and every position strictly between j
// and i propagates (X xor Y). Evaluated literally.
inline bool carry(Nat i, const BitSet& x, const BitSet& y) {
  for (Nat j = 0; j < i; ++j) {
    if (!(x(j) && y(j))) continue;
    bool propagates = true;
    for (Nat l = j + 1; l < i && propagates; ++l) propagates = x(l) != y(l);
    if (propagates) return true;
  }
  return false;
}

// (X+Y)(i) <-> i < |X|+|Y| & (X(i) xor Y(i) xor carry(i, X, Y)).
//
// carry(i) holds iff the nearest position below i that does not propagate
// exists and generates, so one upward sweep decides every carry.
inline BitSet add_bits(const BitSet& x, const BitSet& y) {
  const Nat bound = x.length() + y.length();
  BitSet out;
  bool carry_in = false;  // carry(i) for the current i
  for (Nat i = 0; i < bound; ++i) {
    const bool a = x(i), b = y(i);
    if (a != b ? !carry_in : carry_in) out.insert(i);
    if (a == b) carry_in = a && b;
    if (i >= std::max(x.length(), y.length()) && !carry_in) break;
  }
  return out;
}

}  // namespace tcforge::tc0alg
