#include <gtest/gtest.h>

#include "tcforge/core/rng.hpp"
#include "tcforge/kernel/text.hpp"
#include "tcforge/subp/gap.hpp"
#include "tcforge/subp/nck.hpp"
#include "tcforge/subp/recursion.hpp"
#include "tcforge/verify/generators.hpp"
#include "tcforge/verify/oracles.hpp"
#include "tcforge/verify/structures.hpp"

using namespace tcforge;
using namespace tcforge::subp;

namespace {

BitSet elems(std::initializer_list<Nat> xs) { return BitSet::from_elements(std::vector<Nat>(xs)); }

Digraph graph(Nat a, std::initializer_list<std::pair<Nat, Nat>> edges) {
  Digraph g;
  g.a = a;
  for (auto [j, i] : edges) g.edges.set(j, i);
  return g;
}

LayeredCircuit and_of_inputs() {
  LayeredCircuit c;
  c.a = 2;
  c.k = 1;
  c.layers.push_back({{{0, 0, 1, true}, {1, 1, 1, false}, {2, 2, 2, false}}});
  return c;
}

RecursionSpec shift_spec() {
  return RecursionSpec::parse("X(z)", "E w < z : (w + 1 = z & Y(w))", "x + n + 1");
}

}  // namespace

TEST(Gap, Examples) {
  const Table2D chain = gap_array(graph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(chain.row(0), elems({0}));
  EXPECT_EQ(chain.row(1), elems({0, 1}));
  EXPECT_EQ(chain.row(2), elems({0, 1, 2}));

  const Table2D none = gap_array(graph(2, {}));
  EXPECT_EQ(none.row(0), elems({0}));
  EXPECT_EQ(none.row(1), elems({0}));

  const Table2D cut = gap_array(graph(3, {{1, 2}}));
  for (Nat k = 0; k < 3; ++k) EXPECT_EQ(cut.row(k), elems({0}));

  EXPECT_TRUE(gap_array(graph(0, {})).empty());
}

TEST(Gap, Reach) {
  const Digraph chain = graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_TRUE(gap_reach(chain, 3));
  EXPECT_TRUE(gap_reach(chain, 0));
  EXPECT_FALSE(gap_reach(graph(3, {{1, 2}}), 2));
  EXPECT_THROW(gap_reach(chain, 4), DomainError);
}

TEST(Gap, RandomAgainstBfs) {
  Rng rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const Nat a = rng.below(51);
    const Digraph g = verify::random_digraph(rng, a, 1, 2 + 2 * rng.below(a + 1));
    const Table2D z = gap_array(g);
    const auto balls = verify::bfs_balls(a, g.edges, a + 1);
    for (Nat k = 0; k < a; ++k) {
      ASSERT_EQ(z.row(k), balls[k]);
      if (k + 1 < a) {
        ASSERT_EQ(z.row(k) & z.row(k + 1), z.row(k));
      }
    }
    if (a > 0) {
      ASSERT_EQ(balls[a], z.row(a - 1));
    }
    ASSERT_TRUE(check_reach_array(g, z));
    if (a > 0) {
      Table2D bad = z;
      const Nat k = rng.below(a), i = rng.below(a);
      bad.assign(k, i, !z(k, i));
      ASSERT_FALSE(check_reach_array(g, bad));
    }
  }
}

TEST(Gap, TextFormat) {
  const Digraph g = parse_digraph("a=5; 0->1; 1->2;");
  EXPECT_EQ(g.a, 5u);
  EXPECT_TRUE(g.edges(0, 1));
  EXPECT_TRUE(g.edges(1, 2));
  EXPECT_EQ(g.edges.count(), 2u);
  EXPECT_EQ(parse_digraph(to_text(g)).edges, g.edges);
  EXPECT_EQ(parse_digraph("a=2").a, 2u);
  EXPECT_EQ(parse_digraph("a = 3;\n 2 -> 0 ;\n").edges, graph(3, {{2, 0}}).edges);

  try {
    parse_digraph("a=3;\n0->5;");
    FAIL() << "out-of-range edge accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
  EXPECT_THROW(parse_digraph("b=3;"), ParseError);
  EXPECT_THROW(parse_digraph("a=3; 0-1;"), ParseError);
  EXPECT_THROW(parse_digraph("a=3; 0->1 1->2;"), ParseError);
}

TEST(Nck, SelectTruthTable) {
  EXPECT_TRUE(select(false, false, true));
  for (int m = 0; m < 8; ++m) {
    const bool p = m & 4, q = m & 2, r = m & 1;
    EXPECT_EQ(select(p, q, r), p ? (q && r) : (q || r));
  }
}

TEST(Nck, Examples) {
  const LayeredCircuit c = and_of_inputs();
  EXPECT_TRUE(nck_eval(c, elems({0, 1}))(1, 0));
  EXPECT_FALSE(nck_eval(c, elems({0}))(1, 0));
  EXPECT_EQ(nck_eval(c, elems({0, 1, 5})).row(0), elems({0, 1}));
}

TEST(Nck, Depth) {
  EXPECT_EQ(nck_depth(0, 1), 0u);
  EXPECT_EQ(nck_depth(1, 3), 0u);
  EXPECT_EQ(nck_depth(2, 1), 1u);
  EXPECT_EQ(nck_depth(3, 1), 2u);
  EXPECT_EQ(nck_depth(4, 2), 4u);
  EXPECT_EQ(nck_depth(16, 1), 4u);
  EXPECT_EQ(nck_depth(8, 2), 9u);
  EXPECT_EQ(nck_depth(3, 2), 3u);
}

TEST(Nck, IllWired) {
  LayeredCircuit missing = and_of_inputs();
  missing.layers[0].gates.pop_back();
  EXPECT_THROW(nck_eval(missing, elems({0})), DomainError);
  EXPECT_TRUE(nck_eval(missing, elems({0}), true).empty());

  LayeredCircuit twice = and_of_inputs();
  twice.layers[0].gates.push_back({0, 2, 2, true});
  EXPECT_FALSE(wiring_fault(twice).empty());
  EXPECT_THROW(nck_eval(twice, elems({0})), DomainError);

  LayeredCircuit repeated = and_of_inputs();
  repeated.layers[0].gates.push_back(repeated.layers[0].gates[0]);
  EXPECT_NO_THROW(nck_eval(repeated, elems({0})));

  LayeredCircuit wide = and_of_inputs();
  wide.layers[0].gates[0].x = 3;
  EXPECT_THROW(nck_eval(wide, elems({0}), true), DomainError);

  LayeredCircuit deep = and_of_inputs();
  deep.layers.push_back(deep.layers[0]);
  EXPECT_THROW(nck_eval(deep, elems({0})), DomainError);
}

TEST(Nck, RandomAgainstRecursive) {
  Rng rng(300);
  for (int trial = 0; trial < 120; ++trial) {
    const Nat k = 1 + rng.below(3);
    Nat a = 2 + rng.below(15);
    while (nck_depth(a, k) > 20) --a;
    const LayeredCircuit c = verify::random_layered(rng, a, k);
    const BitSet x = verify::random_bitset(rng, a + 3);
    const Table2D z = nck_eval(c, x);
    for (Nat d = 0; d <= c.layers.size(); ++d)
      for (Nat g = 0; g <= a; ++g) ASSERT_EQ(z(d, g), verify::eval_gate_recursive(c, x, d, g)) << d << " " << g;
  }
}

TEST(Nck, JsonRoundTrip) {
  Rng rng(6);
  const LayeredCircuit c = verify::random_layered(rng, 5, 2);
  EXPECT_EQ(parse_layered(to_json(c).dump()), c);
  EXPECT_EQ(parse_layered(R"({"a":2,"k":1,"layers":[{"gates":[{"z":0,"x":0,"y":1,"and":true}]}]})").layers[0].gates[0],
            (LayerGate{0, 0, 1, true}));
  EXPECT_THROW(parse_layered("{\"a\":2"), ParseError);
  EXPECT_THROW(parse_layered(R"({"a":2,"k":1,"layers":[{"gates":[{"z":0}]}]})"), ParseError);
}

TEST(Recursion, Examples) {
  const RecursionSpec spec = shift_spec();
  EXPECT_EQ(rec_eval(spec, 3, elems({0})), elems({3}));
  EXPECT_EQ(rec_eval(spec, 0, elems({0, 4})), elems({0, 4}));
  const RecursionSpec tight = RecursionSpec::parse("X(z)", "Y(z)", "2");
  EXPECT_EQ(rec_eval(tight, 0, elems({0, 4})), elems({0}));
  const RecursionSpec nothing = RecursionSpec::parse("X(z)", "true", "0");
  for (Nat x = 0; x < 4; ++x) EXPECT_TRUE(rec_eval(nothing, x, elems({0, 1, 2})).empty());
}

TEST(Recursion, SpecValidation) {
  EXPECT_THROW(RecursionSpec::parse("X(w)", "Y(z)", "n"), DomainError);
  EXPECT_THROW(RecursionSpec::parse("X(z)", "Z(z)", "n"), DomainError);
  EXPECT_THROW(RecursionSpec::parse("X(z)", "Y(z)", "n + m"), DomainError);
  EXPECT_THROW(RecursionSpec::parse("X(z)", "Y(z", "n"), ParseError);
}

TEST(Recursion, MultiMatchesSingleRuns) {
  const RecursionSpec spec =
      RecursionSpec::parse("X(z)", "(Y(z) & !X(z)) | (E w < z : (w + 1 = z & Y(w) & X(w)))", "n + x + 1");
  EXPECT_TRUE(rec_eval_multi(spec, 3, 0, Table2D{}).empty());

  Rng rng(77);
  for (Nat b : {1u, 3u, 5u}) {
    const Nat a = 1 + rng.below(5);
    const Table2D inputs = verify::random_table(rng, b, 8);
    const Table2D y = rec_eval_multi(spec, a, b, inputs);
    for (Nat r = 0; r < b; ++r) {
      // Independent step-by-step run.
      BitSet cur = rec_eval(spec, 0, inputs.row(r));
      ASSERT_EQ(y.row(pair(r, 0)), cur);
      for (Nat x = 0; x < a; ++x) {
        cur = spec.next(x, inputs.row(r), cur);
        ASSERT_EQ(y.row(pair(r, x + 1)), cur);
        ASSERT_EQ(cur, rec_eval(spec, x + 1, inputs.row(r)));
      }
    }
    ASSERT_TRUE(check_recursion_table(spec, a, b, inputs, y));
  }
}

TEST(Recursion, ValidatorRejectsMutations) {
  const RecursionSpec spec = shift_spec();
  Rng rng(100);
  const Nat a = 4, b = 3;
  const Table2D inputs = verify::random_table(rng, b, 6);
  const Table2D y = rec_eval_multi(spec, a, b, inputs);
  ASSERT_TRUE(check_recursion_table(spec, a, b, inputs, y));
  for (int trial = 0; trial < 100; ++trial) {
    const Nat r = pair(rng.below(b + 1), rng.below(a + 2));
    const Nat z = rng.below(a + 12);
    Table2D bad = y;
    bad.assign(r, z, !y(r, z));
    ASSERT_FALSE(check_recursion_table(spec, a, b, inputs, bad)) << r << " " << z;
  }
}
