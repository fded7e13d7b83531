#pragma once

#include <tuple>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/primitives.hpp"
#include "tcforge/kernel/table2d.hpp"

namespace tcforge::tc0alg {

// Union(b, X, Y)(z) <-> z < b & (X(z) | Y(z))
inline BitSet bounded_union(Nat b, const BitSet& x, const BitSet& y) { return (x | y).prefix(b); }

// FiniteUnion(a, b, Z)(z) <-> z < b & E y < a : Z^{[y]}(z)
inline BitSet finite_union(Nat a, Nat b, const Table2D& z) {
  BitSet out;
  for (Nat y = 0; y < a && y < z.row_count(); ++y) out = out | z.row(y).prefix(b);
  return out;
}

// Rows 0..a-1 of Z laid end to end at stride b: position b x + y holds
// Z^{[x]}(y) for x < a, y < b.
inline BitSet concat_rows(Nat a, Nat b, const Table2D& z) {
  BitSet out;
  for (Nat x = 0; x < a && x < z.row_count(); ++x)
    z.row(x).prefix(b).for_each([&](Nat y) { out.insert(checked_add(checked_mul(b, x), y)); });
  return out;
}

// Total bits in rows 0..a-1 of Z below b: numones(a b, concat_rows(a, b, Z)).
inline Nat tot_numones(Nat a, Nat b, const Table2D& z) { return numones(checked_mul(a, b), concat_rows(a, b, z)); }

struct Collision {
  Nat hole = 0;    // y
  Nat later = 0;   // z1
  Nat earlier = 0; // z2 < z1

  friend bool operator==(const Collision&, const Collision&) = default;
};

// X(y, z): pigeon z sits in hole y. Given that every pigeon z <= a sits in
// some hole y < a, returns the least hole holding two pigeons among 0..a,
// with its two smallest pigeons.
inline Collision php_collision(Nat a, const Table2D& x) {
  for (Nat z = 0; z <= a; ++z) {
    bool placed = false;
    for (Nat y = 0; y < a && !placed; ++y) placed = x(y, z);
    if (!placed) throw DomainError("pigeon " + std::to_string(z) + " is not mapped to any hole below " + std::to_string(a));
  }
  for (Nat y = 0; y < a; ++y) {
    const BitSet pre = x.row(y).prefix(a + 1);
    if (numones(a + 1, pre) >= 2) {
      const auto elems = pre.elements();
      return Collision{y, elems[1], elems[0]};
    }
  }
  throw DomainError("no collision found; the map is not total");
}

}  // namespace tcforge::tc0alg
