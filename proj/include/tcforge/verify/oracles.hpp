#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <deque>
#include <vector>

#include "tcforge/kernel/bitset.hpp"
#include "tcforge/kernel/table2d.hpp"

// Test-only reference implementations, written independently of the
// algorithms they check.
namespace tcforge::verify {

using Big = boost::multiprecision::cpp_int;

// Horner over the bits, most significant first.
inline Big big_value(const BitSet& x) {
  Big v = 0;
  for (Nat i = x.length(); i-- > 0;) {
    v <<= 1;
    if (x(i)) v += 1;
  }
  return v;
}

inline BitSet big_bits(Big v) {
  BitSet out;
  for (Nat i = 0; v != 0; ++i, v >>= 1)
    if ((v & 1) != 0) out.insert(i);
  return out;
}

// Binary length by repeated halving.
inline Nat bin_len_oracle(Big x) {
  Nat n = 0;
  for (; x > 0; x /= 2) ++n;
  return n;
}

inline Big pow2_oracle(Nat e) {
  Big v = 1;
  for (Nat i = 0; i < e; ++i) v *= 2;
  return v;
}

inline Nat popcount_oracle(const BitSet& x) {
  Nat c = 0;
  for (Nat i = 0; i < x.length(); ++i) c += x(i) ? 1 : 0;
  return c;
}

// Rows k = 0..rows-1 of vertices reachable from 0 in at most k steps, by BFS
// distances; edge j -> i is the table cell (j, i).
inline std::vector<BitSet> bfs_balls(Nat a, const Table2D& edges, Nat rows) {
  std::vector<Nat> dist(a, ~Nat{0});
  std::deque<Nat> queue;
  if (a > 0) {
    dist[0] = 0;
    queue.push_back(0);
  }
  while (!queue.empty()) {
    const Nat v = queue.front();
    queue.pop_front();
    for (Nat w = 0; w < a; ++w)
      if (edges(v, w) && dist[w] == ~Nat{0}) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  std::vector<BitSet> out(rows);
  for (Nat k = 0; k < rows; ++k)
    for (Nat v = 0; v < a; ++v)
      if (dist[v] <= k) out[k].insert(v);
  return out;
}

}  // namespace tcforge::verify
