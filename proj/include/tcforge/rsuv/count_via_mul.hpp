#pragma once

#include "tcforge/rsuv/delta.hpp"
#include "tcforge/rsuv/encoding.hpp"
#include "tcforge/tc0alg/counting.hpp"
#include "tcforge/tc0alg/multiply.hpp"

namespace tcforge::rsuv {

// Layout of the counting product for a value of length n: bit i of the value
// moves to position i * stride (stride = 2 + |n|, leaving 1 + |n| zeros
// between), the multiplier has a one at j * stride for j < n, and field k of
// the product, bits [k * stride, (k + 1) * stride), holds the count of ones
// among bits 0..k.
struct CountLayout {
  Nat n = 0;
  Nat stride = 0;

  explicit CountLayout(Nat length) : n(length), stride(2 + bit_length(length)) {}

  BitSet spread(const BitSet& x) const {
    BitSet out;
    x.prefix(n).for_each([&](Nat i) { out.insert(checked_mul(i, stride)); });
    return out;
  }

  BitSet multiplier() const {
    BitSet out;
    for (Nat j = 0; j < n; ++j) out.insert(checked_mul(j, stride));
    return out;
  }

  Nat field(const BitSet& product, Nat k) const {
    Nat v = 0;
    for (Nat r = stride; r-- > 0;) v = (v << 1) | (product(k * stride + r) ? 1 : 0);
    return v;
  }
};

// Counting array of the bits of a, read off the product spread(a) * multiplier
// computed by mul_bits: row 0 is 0 and row z is field z - 1.
inline tc0alg::CountingArray count_via_mul(const BigNat& a) {
  const BitSet x = decode_num(a);
  const CountLayout layout(x.length());
  const BitSet product = tc0alg::mul_bits(layout.spread(x), layout.multiplier());
  tc0alg::CountingArray out;
  out.table.set(0, 0);
  for (Nat z = 1; z <= layout.n; ++z) out.table.set(z, layout.field(product, z - 1));
  return out;
}

}  // namespace tcforge::rsuv
