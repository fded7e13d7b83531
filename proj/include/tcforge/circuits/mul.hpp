#pragma once

#include <vector>

#include "tcforge/circuits/circuit.hpp"
#include "tcforge/tc0alg/sum.hpp"

namespace tcforge::circuits {

// Gate-level pieces of the multiplication pipeline. Numbers are vectors of
// gates, least significant bit first.
namespace arith {

using Bits = std::vector<GateId>;

inline GateId bit_at(CircuitBuilder& b, const Bits& x, Nat i) { return i < x.size() ? x[i] : b.falsity(); }

// Carry into position i: some j < i generates and every l in (j, i) propagates.
inline Bits add(CircuitBuilder& b, const Bits& x, const Bits& y) {
  const Nat w = std::max(x.size(), y.size());
  Bits gen, prop;
  for (Nat i = 0; i < w; ++i) {
    gen.push_back(b.and_(bit_at(b, x, i), bit_at(b, y, i)));
    prop.push_back(b.xor_(bit_at(b, x, i), bit_at(b, y, i)));
  }
  Bits out;
  for (Nat i = 0; i <= w; ++i) {
    std::vector<GateId> any;
    for (Nat j = 0; j < i; ++j) {
      std::vector<GateId> chain{gen[j]};
      for (Nat l = j + 1; l < i; ++l) chain.push_back(prop[l]);
      any.push_back(b.and_(chain));
    }
    const GateId carry = b.or_(any);
    out.push_back(i < w ? b.xor_(prop[i], carry) : carry);
  }
  return out;
}

// Binary value of a thermometer code: at_least[t] holds iff the count is >= t,
// for t = 1..at_least.size(); bit r collects the exact counts with bit r set.
inline Bits tally_to_binary(CircuitBuilder& b, const std::vector<GateId>& at_least) {
  const Nat top = at_least.size();
  auto ge = [&](Nat t) { return t == 0 ? b.truth() : t <= top ? at_least[t - 1] : b.falsity(); };
  Bits out;
  for (Nat r = 0; r < bit_length(top); ++r) {
    std::vector<GateId> any;
    for (Nat t = 1; t <= top; ++t)
      if ((t >> r) & 1) any.push_back(b.and_(ge(t), b.not_(ge(t + 1))));
    out.push_back(b.or_(any));
  }
  return out;
}

// Row t of the column tallies: at least t + 1 of `column` are set, t < rows.
inline std::vector<GateId> column_tally(CircuitBuilder& b, const std::vector<GateId>& column, Nat rows) {
  std::vector<GateId> out;
  for (Nat t = 0; t < rows; ++t) out.push_back(b.threshold(t + 1, column));
  return out;
}

// Sum of the block tallies as one threshold count over the block's long
// string: tally row j is repeated 2^j times.
inline Bits block_by_count(CircuitBuilder& b, const std::vector<std::vector<GateId>>& tallies, Nat first, Nat ell) {
  std::vector<GateId> long_string;
  for (Nat j = 0; j < ell && first + j < tallies.size(); ++j)
    for (Nat u = 0; u < tc0alg::pow2(j); ++u)
      long_string.insert(long_string.end(), tallies[first + j].begin(), tallies[first + j].end());
  std::vector<GateId> at_least;
  for (Nat t = 1; t <= long_string.size(); ++t) at_least.push_back(b.threshold(t, long_string));
  return tally_to_binary(b, at_least);
}

// Even blocks into L, odd blocks into H, each at offset i * ell; then L + H.
inline Bits combine_blocks(CircuitBuilder& b, const std::vector<Bits>& blocks, Nat ell) {
  std::vector<std::vector<GateId>> low, high;
  for (Nat i = 0; i < blocks.size(); ++i) {
    auto& half = i % 2 == 0 ? low : high;
    for (Nat r = 0; r < blocks[i].size(); ++r) {
      const Nat pos = i * ell + r;
      if (half.size() <= pos) half.resize(pos + 1);
      half[pos].push_back(blocks[i][r]);
    }
  }
  auto join = [&](const std::vector<std::vector<GateId>>& half) {
    Bits out;
    for (const auto& at : half) out.push_back(b.or_(at));
    return out;
  };
  return add(b, join(low), join(high));
}

// Sum of a few short binary rows, with each block sum taken as a direct
// threshold count.
inline Bits small_sum(CircuitBuilder& b, const std::vector<Bits>& rows) {
  const Nat n = rows.size();
  Nat m = 0;
  for (const auto& r : rows) m = std::max<Nat>(m, r.size());
  if (n == 0 || m == 0) return {};
  std::vector<std::vector<GateId>> tallies;
  for (Nat q = 0; q < m; ++q) {
    std::vector<GateId> column;
    for (const auto& r : rows) column.push_back(bit_at(b, r, q));
    tallies.push_back(column_tally(b, column, n));
  }
  const Nat ell = tc0alg::block_width(n);
  const Nat k = ceil_div(m, 2 * ell);
  std::vector<Bits> blocks;
  for (Nat i = 0; i < 2 * k; ++i) blocks.push_back(block_by_count(b, tallies, i * ell, ell));
  return combine_blocks(b, blocks, ell);
}

}  // namespace arith

// n x n multiplier: the product rows of X and Y, column tallies by threshold
// gates, block sums over groups of ell = 1 + ceil(log n) columns, the even and
// odd blocks added by a carry-formula adder. Outputs are product bits 0..2n-1.
// Nothing is folded, so every width gets the same stages and the same depth.
inline Circuit compile_mul(Nat n) {
  if (n == 0) throw DomainError("multiplier width must be at least 1");
  CircuitBuilder b({{"X", n, InputKind::String}, {"Y", n, InputKind::String}}, false);
  const Nat m = 2 * n;

  // Column i of the product rows: X(i - r) & Y(r), padded to n entries.
  std::vector<std::vector<GateId>> columns(m);
  for (Nat r = 0; r < n; ++r)
    for (Nat x = 0; x < n; ++x) columns[x + r].push_back(b.and_(b.input("X", x), b.input("Y", r)));
  for (auto& col : columns) col.resize(n, b.falsity());

  std::vector<arith::Bits> counts;
  for (const auto& col : columns) counts.push_back(arith::tally_to_binary(b, arith::column_tally(b, col, n)));

  const Nat ell = tc0alg::block_width(n);
  const Nat k = ceil_div(m, 2 * ell);
  std::vector<arith::Bits> blocks;
  for (Nat i = 0; i < 2 * k; ++i) {
    // b_i = sum_j 2^j c_{i ell + j}, itself an iterated sum of ell shifted rows.
    std::vector<arith::Bits> rows;
    for (Nat j = 0; j < ell && i * ell + j < m; ++j) {
      arith::Bits row(j, b.falsity());
      row.insert(row.end(), counts[i * ell + j].begin(), counts[i * ell + j].end());
      rows.push_back(std::move(row));
    }
    blocks.push_back(arith::small_sum(b, rows));
  }
  arith::Bits product = arith::combine_blocks(b, blocks, ell);
  product.resize(m, b.falsity());
  return b.build(product);
}

}  // namespace tcforge::circuits
