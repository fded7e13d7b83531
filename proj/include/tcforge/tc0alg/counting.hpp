#pragma once

#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/primitives.hpp"
#include "tcforge/kernel/table2d.hpp"

namespace tcforge::tc0alg {

// Table with cell (z, y) meaning numones(z, X) = y, for z <= |X|.
struct CountingArray {
  Table2D table;

  // The unique y in row z; throws if row z is not a singleton.
  Nat value_at(Nat z) const {
    const BitSet& r = table.row(z);
    if (r.count() != 1) throw DomainError("counting array row " + std::to_string(z) + " is not a singleton");
    return r.length() - 1;
  }

  friend bool operator==(const CountingArray&, const CountingArray&) = default;
};

inline CountingArray numones_array(const BitSet& x) {
  CountingArray out;
  Nat y = 0;
  for (Nat z = 0; z <= x.length(); ++z) {
    out.table.set(z, y);
    if (x(z)) ++y;
  }
  return out;
}

// The three conjuncts of the counting-array formula, checked literally:
//   A z <= |X| : E! y <= |X| : Y(z, y)
//   Y(0, 0)
//   A z < |X| : A y < |X| : Y(z, y) -> (X(z) -> Y(z+1, y+1)) & (!X(z) -> Y(z+1, y))
inline bool check_numones_array(const BitSet& x, const Table2D& y) {
  const Nat n = x.length();
  for (Nat z = 0; z <= n; ++z)
    if (y.row(z).count_below(n + 1) != 1) return false;
  if (!y(0, 0)) return false;
  for (Nat z = 0; z < n; ++z) {
    bool ok = true;
    y.row(z).prefix(n).for_each([&](Nat v) { ok = ok && (x(z) ? y(z + 1, v + 1) : y(z + 1, v)); });
    if (!ok) return false;
  }
  return true;
}

inline bool check_numones_array(const BitSet& x, const CountingArray& y) { return check_numones_array(x, y.table); }

// Running count of X modulo m, cells (z, numones(z, X) mod m) for z <= |X|.
inline Table2D modm_array(Nat m, const BitSet& x) {
  if (m < 2) throw DomainError("modulus must be at least 2");
  Table2D out;
  Nat r = 0;
  for (Nat z = 0; z <= x.length(); ++z) {
    out.set(z, r);
    if (x(z)) r = (r + 1) % m;
  }
  return out;
}

//   A z <= |X| : E! y < m : Y(z, y)
//   Y(0, 0)
//   A z < |X| : A y < m : Y(z, y) -> (X(z) -> Y(z+1, (y+1) mod m)) & (!X(z) -> Y(z+1, y))
inline bool check_modm_array(Nat m, const BitSet& x, const Table2D& y) {
  if (m < 2) throw DomainError("modulus must be at least 2");
  const Nat n = x.length();
  for (Nat z = 0; z <= n; ++z)
    if (y.row(z).count_below(m) != 1) return false;
  if (!y(0, 0)) return false;
  for (Nat z = 0; z < n; ++z)
    for (Nat v = 0; v < m; ++v)
      if (y(z, v) && !(x(z) ? y(z + 1, (v + 1) % m) : y(z + 1, v))) return false;
  return true;
}

// Counting arrays for rows 0..b-1 of X at once: the rows are laid end to end
// with stride |X| in one string X', X' is counted once, and each row's counts
// are recovered as differences y = y2 - y1 of two prefix counts of X'.
inline std::vector<CountingArray> multi_counting_arrays(Nat b, const Table2D& x) {
  std::vector<CountingArray> out;
  if (b == 0) return out;
  const Nat stride = x.length();
  BitSet joined;
  for (Nat u = 0; u < b; ++u) x.row(u).for_each([&](Nat i) { joined.insert(checked_add(checked_mul(u, stride), i)); });
  const CountingArray whole = numones_array(joined);
  auto prefix_count = [&](Nat p) { return p <= joined.length() ? whole.value_at(p) : whole.value_at(joined.length()); };
  for (Nat u = 0; u < b; ++u) {
    CountingArray slice;
    const Nat base = u * stride;
    const Nat y1 = prefix_count(base);
    for (Nat z = 0; z <= x.row(u).length(); ++z) slice.table.set(z, prefix_count(base + z) - y1);
    out.push_back(std::move(slice));
  }
  return out;
}

}  // namespace tcforge::tc0alg
