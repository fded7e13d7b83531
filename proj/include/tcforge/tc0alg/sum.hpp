#pragma once

#include <functional>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/primitives.hpp"
#include "tcforge/kernel/table2d.hpp"
#include "tcforge/tc0alg/addition.hpp"

namespace tcforge::tc0alg {

// Column i of Z (rows j < n) becomes row i, for i < m.
inline Table2D transpose(Nat n, Nat m, const Table2D& z) {
  Table2D out;
  for (Nat j = 0; j < n && j < z.row_count(); ++j)
    z.row(j).prefix(m).for_each([&](Nat i) { out.set(i, j); });
  return out;
}

// Row i is a unary tally {0, ..., c_i - 1} of the bits in column i of Z.
inline Table2D add_cols(Nat n, Nat m, const Table2D& z) {
  const Table2D zt = transpose(n, m, z);
  std::vector<BitSet> rows;
  rows.reserve(m);
  for (Nat i = 0; i < m; ++i) rows.push_back(BitSet::interval(0, numones(n, zt.row(i))));
  return Table2D::from_rows(std::move(rows));
}

inline Nat pow2(Nat e) {
  if (e >= 64) throw DomainError("2^" + std::to_string(e) + " does not fit");
  return Nat{1} << e;
}

// The long string for a block: for j < ell, u < 2^j, v < n,
//   Y((2^j - 1) n + u n + v)  <->  v < c_{a+j}
// where c_i = |W^{[i]}| <= n. Stored as its 2^ell - 1 runs of ones.
class BlockString {
 public:
  BlockString(const Table2D& w, Nat a, Nat ell, Nat n) : n_(n), ell_(ell) {
    counts_.reserve(ell);
    for (Nat j = 0; j < ell; ++j) {
      const Nat c = w.row(a + j).length();
      if (c > n) throw DomainError("row " + std::to_string(a + j) + " longer than the bound n");
      counts_.push_back(c);
    }
    (void)pow2(ell);
  }

  // Bound on |Y|: 2^ell * n.
  Nat length_bound() const { return checked_mul(pow2(ell_), n_); }

  bool contains(Nat p) const {
    if (n_ == 0) return false;
    const Nat q = p / n_ + 1, v = p % n_;  // p = (q - 1) n + v with q = 2^j + u
    if (q >= pow2(ell_)) return false;
    const Nat j = bit_length(q) - 1;
    return v < counts_[j];
  }

  // numones(z, Y), summing whole runs and clipping the last one.
  Nat count_below(Nat z) const {
    Nat total = 0;
    for (Nat j = 0; j < ell_; ++j) {
      const Nat start = (pow2(j) - 1) * n_;
      for (Nat u = 0; u < pow2(j); ++u) {
        const Nat run = start + u * n_;
        if (run >= z) return total;
        total += std::min(counts_[j], z - run);
      }
    }
    return total;
  }

  // The same string as a dense set, for cross-checks.
  BitSet materialize() const {
    BitSet out;
    for (Nat j = 0; j < ell_; ++j)
      for (Nat u = 0; u < pow2(j); ++u) {
        const Nat run = (pow2(j) - 1) * n_ + u * n_;
        out.insert_range(run, run + counts_[j]);
      }
    return out;
  }

 private:
  Nat n_, ell_;
  std::vector<Nat> counts_;
};

// sum_{j < ell} 2^j |W^{[a+j]}|, as numones over the block string; n bounds
// every |W^{[a+j]}|.
inline Nat ssum(const Table2D& w, Nat a, Nat ell, Nat n) {
  BlockString y(w, a, ell, n);
  return y.count_below(y.length_bound());
}

// Same value counted over the materialized long string.
inline Nat ssum_dense(const Table2D& w, Nat a, Nat ell, Nat n) {
  BitSet y = BlockString(w, a, ell, n).materialize();
  return numones(y.length(), y);
}

inline Nat block_width(Nat n) { return 1 + ceil_log2(n); }

struct SumPlan {
  Nat n = 0;
  Nat m = 0;
  Nat ell = 0;
  Nat k = 0;
  std::vector<Nat> block_sums;
  BitSet low;   // L: even blocks
  BitSet high;  // H: odd blocks
};

// {i + shift : bit i of c}
inline BitSet to_string_shift(Nat c, Nat shift) { return BitSet::from_words({c}).shifted(shift); }

// Hook invoked with the plan of every sum_prime call on this thread while
// an ObserveSums guard is alive.
using SumObserver = std::function<void(const SumPlan&)>;

namespace sum_detail {
inline SumObserver*& current_observer() {
  thread_local SumObserver* obs = nullptr;
  return obs;
}
}  // namespace sum_detail

class ObserveSums {
 public:
  explicit ObserveSums(SumObserver f) : f_(std::move(f)), prev_(sum_detail::current_observer()) {
    sum_detail::current_observer() = &f_;
  }
  ~ObserveSums() { sum_detail::current_observer() = prev_; }
  ObserveSums(const ObserveSums&) = delete;
  ObserveSums& operator=(const ObserveSums&) = delete;

 private:
  SumObserver f_;
  SumObserver* prev_;
};

struct SumResult {
  BitSet value;
  SumPlan plan;
};

// sum_{i < m} 2^i |W^{[i]}| by blocks: ell = 1 + ceil(log n), k = ceil(m / 2 ell),
// b_i = ssum(W, i ell, ell) for i < 2k, L and H the even and odd blocks laid
// out at their offsets i ell, result L + H.
inline SumResult sum_prime_planned(Nat m, Nat n, const Table2D& all_rows) {
  // Rows at or beyond m do not take part; blocks past m read them as empty.
  const Table2D w = all_rows.row_count() <= m
                        ? all_rows
                        : Table2D::from_rows(std::vector<BitSet>(all_rows.rows().begin(),
                                                                   all_rows.rows().begin() + static_cast<std::ptrdiff_t>(m)));
  for (Nat i = 0; i < w.row_count(); ++i)
    if (w.row(i).length() > n)
      throw DomainError("row " + std::to_string(i) + " has length " + std::to_string(w.row(i).length()) +
                        " > n = " + std::to_string(n));
  SumPlan plan;
  plan.n = n;
  plan.m = m;
  plan.ell = block_width(n);
  plan.k = ceil_div(m, 2 * plan.ell);
  for (Nat i = 0; i < 2 * plan.k; ++i) {
    const Nat b = ssum(w, i * plan.ell, plan.ell, n);
    plan.block_sums.push_back(b);
    BitSet& half = i % 2 == 0 ? plan.low : plan.high;
    to_string_shift(b, i * plan.ell).for_each([&](Nat p) { half.insert(p); });
  }
  SumResult out{add_bits(plan.low, plan.high), std::move(plan)};
  if (auto* obs = sum_detail::current_observer()) (*obs)(out.plan);
  return out;
}

inline BitSet sum_prime(Nat m, Nat n, const Table2D& w) { return sum_prime_planned(m, n, w).value; }

// sum of the rows Z^{[0]}, ..., Z^{[n-1]}, each of length <= m.
inline BitSet sum_rows(Nat n, Nat m, const Table2D& z) { return sum_prime(m, n, add_cols(n, m, z)); }

}  // namespace tcforge::tc0alg
