#pragma once

#include <concepts>

#include "tcforge/kernel/bitset.hpp"

namespace tcforge {

// |{i in X : i < z}|
inline Nat numones(Nat z, const BitSet& x) { return x.count_below(z); }

inline Nat pd(Nat x) { return x == 0 ? 0 : x - 1; }

// Least z < |X| with X(z) != Y(z), else |X|.
inline Nat fse(const BitSet& x, const BitSet& y) {
  for (Nat z = 0; z < x.length(); ++z)
    if (x(z) != y(z)) return z;
  return x.length();
}

// Least z < t with pred(z), else t. pred is called in ascending order.
template <std::predicate<Nat> Pred>
Nat min_witness(Pred&& pred, Nat t) {
  for (Nat z = 0; z < t; ++z)
    if (pred(z)) return z;
  return t;
}

// {z < t : pred(z)}
template <std::predicate<Nat> Pred>
BitSet comprehend(Pred&& pred, Nat t) {
  BitSet out;
  for (Nat z = 0; z < t; ++z)
    if (pred(z)) out.insert(z);
  return out;
}

inline BitSet prefix(const BitSet& x, Nat i) { return x.prefix(i); }

}  // namespace tcforge
