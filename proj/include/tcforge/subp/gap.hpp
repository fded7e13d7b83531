#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/table2d.hpp"

namespace tcforge::subp {

// Directed graph on vertices 0..a-1; edges(j, i) is the edge j -> i.
struct Digraph {
  Nat a = 0;
  Table2D edges;

  void validate() const {
    for (Nat j = 0; j < edges.row_count(); ++j) {
      const BitSet& r = edges.row(j);
      if (!r.empty() && (j >= a || r.length() > a))
        throw DomainError("edge out of range for a graph on " + std::to_string(a) + " vertices");
    }
  }
};

// Z(k, i): vertex i is reachable from 0 by a path of length at most k, for
// k = 0..a-1. Each row is computed from the previous one by the step clause.
inline Table2D gap_array(const Digraph& g) {
  g.validate();
  Table2D z;
  if (g.a == 0) return z;
  z.set(0, 0);
  for (Nat k = 0; k + 1 < g.a; ++k) {
    BitSet next;
    for (Nat i = 0; i < g.a; ++i) {
      bool hit = z(k, i);
      for (Nat j = 0; j < g.a && !hit; ++j) hit = g.edges(j, i) && z(k, j);
      if (hit) next.insert(i);
    }
    z.set_row(k + 1, std::move(next));
  }
  return z;
}

inline bool gap_reach(const Digraph& g, Nat target) {
  if (target >= g.a) throw DomainError("target " + std::to_string(target) + " is not a vertex");
  return gap_array(g)(g.a - 1, target);
}

// The reachability-array formula, checked clause by clause: Z(0, 0), no other
// vertex in row 0, the step clause for k + 1 < a, and nothing outside a x a.
inline bool check_reach_array(const Digraph& g, const Table2D& z) {
  const Nat a = g.a;
  if (a == 0) return z.empty();
  if (!z(0, 0) || z.row(0).count() != 1) return false;
  if (z.row_count() > a) return false;
  for (Nat k = 0; k < z.row_count(); ++k)
    if (z.row(k).length() > a) return false;
  for (Nat k = 0; k + 1 < a; ++k)
    for (Nat i = 0; i < a; ++i) {
      bool rhs = z(k, i);
      for (Nat j = 0; j < a && !rhs; ++j) rhs = g.edges(j, i) && z(k, j);
      if (z(k + 1, i) != rhs) return false;
    }
  return true;
}

// Edge-list text: `a=5; 0->1; 1->2;`. Whitespace and newlines are free.
inline Digraph parse_digraph(std::string_view text) {
  std::size_t pos = 0, line = 1, col = 1;
  auto peek = [&] { return pos < text.size() ? text[pos] : '\0'; };
  auto advance = [&] {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
  };
  auto fail = [&](const std::string& msg) { throw ParseError(msg, line, col); };
  auto expect = [&](std::string_view tok) {
    skip_ws();
    for (char c : tok) {
      if (peek() != c) fail("expected '" + std::string(tok) + "'");
      advance();
    }
  };
  auto number = [&] {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    Nat v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const Nat d = static_cast<Nat>(peek() - '0');
      if (v > (UINT64_MAX - d) / 10) fail("number too large");
      v = v * 10 + d;
      advance();
    }
    return v;
  };

  Digraph g;
  expect("a");
  expect("=");
  g.a = number();
  for (;;) {
    skip_ws();
    if (pos == text.size()) break;
    expect(";");
    skip_ws();
    if (pos == text.size()) break;
    const Nat j = number();
    expect("->");
    const std::size_t edge_line = line, edge_col = col;
    const Nat i = number();
    if (j >= g.a || i >= g.a) throw ParseError("edge endpoint is not a vertex", edge_line, edge_col);
    g.edges.set(j, i);
  }
  return g;
}

inline std::string to_text(const Digraph& g) {
  std::string out = "a=" + std::to_string(g.a) + ";";
  for (Nat j = 0; j < g.edges.row_count(); ++j)
    g.edges.row(j).for_each([&](Nat i) { out += " " + std::to_string(j) + "->" + std::to_string(i) + ";"; });
  return out;
}

}  // namespace tcforge::subp
