#pragma once

#include "tcforge/kernel/table2d.hpp"
#include "tcforge/tc0alg/sum.hpp"

namespace tcforge::tc0alg {

// School-multiplication table: Z(y, x + y) <-> X(x) & Y(y).
inline Table2D otimes(const BitSet& x, const BitSet& y) {
  Table2D z;
  y.for_each([&](Nat r) { z.set_row(r, x.shifted(r)); });
  return z;
}

// X * Y = Sum(|Y|, |X| + |Y|, X (x) Y).
inline BitSet mul_bits(const BitSet& x, const BitSet& y) {
  return sum_rows(y.length(), x.length() + y.length(), otimes(x, y));
}

}  // namespace tcforge::tc0alg
