#include <gtest/gtest.h>

#include <set>

#include "tcforge/core/rng.hpp"
#include "tcforge/kernel/assignment.hpp"
#include "tcforge/kernel/pairing.hpp"
#include "tcforge/kernel/primitives.hpp"
#include "tcforge/kernel/table2d.hpp"
#include "tcforge/kernel/text.hpp"

using namespace tcforge;

namespace {

BitSet random_set(Rng& rng, Nat max_len) {
  BitSet s;
  const Nat len = rng.below(max_len + 1);
  for (Nat i = 0; i < len; ++i)
    if (rng.coin()) s.insert(i);
  return s;
}

}  // namespace

TEST(BitSet, LengthIsOnePlusMax) {
  EXPECT_EQ(BitSet{}.length(), 0u);
  EXPECT_EQ((BitSet{0, 4}).length(), 5u);
  EXPECT_EQ((BitSet{63}).length(), 64u);
  EXPECT_EQ((BitSet{64}).length(), 65u);
}

TEST(BitSet, MembershipBeyondLengthIsFalse) {
  BitSet s{1, 3};
  EXPECT_FALSE(s(4));
  EXPECT_FALSE(s(1000000));
  EXPECT_TRUE(s(3));
}

TEST(BitSet, EraseRenormalizes) {
  BitSet s{2, 130};
  s.erase(130);
  EXPECT_EQ(s, BitSet{2});
  EXPECT_EQ(s.length(), 3u);
  s.erase(2);
  EXPECT_EQ(s, BitSet{});
}

TEST(BitSet, FromWordsTrimsTrailingZeros) {
  EXPECT_EQ(BitSet::from_words({5, 0, 0}), (BitSet{0, 2}));
  EXPECT_EQ(BitSet::from_words({0, 0}).length(), 0u);
}

TEST(BitSet, IntervalMatchesInserts) {
  for (Nat lo : {0u, 3u, 63u, 64u, 70u})
    for (Nat hi : {0u, 1u, 64u, 65u, 128u, 200u}) {
      BitSet slow;
      for (Nat i = lo; i < hi; ++i) slow.insert(i);
      EXPECT_EQ(BitSet::interval(lo, hi), slow) << lo << "," << hi;
    }
}

TEST(BitSet, PrefixAndShift) {
  EXPECT_EQ((BitSet{0, 2, 5}).prefix(3), (BitSet{0, 2}));
  EXPECT_EQ((BitSet{0, 2, 5}).prefix(0), BitSet{});
  EXPECT_EQ((BitSet{0, 2, 5}).shifted(70), (BitSet{70, 72, 75}));
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    BitSet x = random_set(rng, 300);
    Nat by = rng.below(150);
    BitSet expect;
    x.for_each([&](Nat i) { expect.insert(i + by); });
    EXPECT_EQ(x.shifted(by), expect);
    Nat cut = rng.below(320);
    BitSet pre;
    x.for_each([&](Nat i) {
      if (i < cut) pre.insert(i);
    });
    EXPECT_EQ(x.prefix(cut), pre);
  }
}

TEST(BitSet, UnionAndIntersection) {
  EXPECT_EQ((BitSet{0, 100}) | (BitSet{3}), (BitSet{0, 3, 100}));
  EXPECT_EQ((BitSet{0, 100}) & (BitSet{100, 3}), (BitSet{100}));
  EXPECT_EQ((BitSet{0, 100}) & (BitSet{3}), BitSet{});
}

TEST(Pairing, Examples) {
  EXPECT_EQ(pair(0, 0), 0u);
  EXPECT_EQ(pair(1, 2), 16u);
  EXPECT_EQ(pair(2, 1), 14u);
  EXPECT_EQ(unpair(0), std::make_pair(Nat{0}, Nat{0}));
  EXPECT_EQ(unpair(16), std::make_pair(Nat{1}, Nat{2}));
  EXPECT_THROW(unpair(3), DomainError);
}

TEST(Pairing, RoundtripAndInjectiveOnGrid) {
  std::set<Nat> seen;
  for (Nat x = 0; x <= 500; ++x)
    for (Nat y = 0; y <= 500; ++y) {
      const Nat p = pair(x, y);
      EXPECT_EQ(p, (x + y) * (x + y + 1) + 2 * y);
      ASSERT_EQ(unpair(p), std::make_pair(x, y));
      seen.insert(p);
    }
  EXPECT_EQ(seen.size(), 501u * 501u);
}

TEST(Pairing, ImageByBruteForce) {
  std::set<Nat> image;
  for (Nat x = 0; x < 60; ++x)
    for (Nat y = 0; y < 60; ++y) image.insert(pair(x, y));
  for (Nat p = 0; p < 1000; ++p) {
    if (image.count(p)) EXPECT_NO_THROW(unpair(p)) << p;
    else EXPECT_THROW(unpair(p), DomainError) << p;
  }
}

TEST(Pairing, OverflowIsReported) { EXPECT_THROW(pair(Nat{1} << 40, Nat{1} << 40), DomainError); }

TEST(Row, Examples) {
  EXPECT_EQ(row(0, BitSet{}), BitSet{});
  EXPECT_EQ(row(1, BitSet{pair(1, 2)}), BitSet{2});
  EXPECT_EQ(row(0, BitSet{pair(1, 2)}), BitSet{});
}

TEST(Table2D, CellsMatchBacking) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    BitSet backing;
    for (int k = 0; k < 20; ++k) backing.insert(pair(rng.below(8), rng.below(8)));
    Table2D tab = Table2D::from_backing(backing);
    EXPECT_EQ(tab.backing(), backing);
    EXPECT_EQ(tab.length(), backing.length());
    for (Nat x = 0; x < 9; ++x) {
      for (Nat y = 0; y < 9; ++y) EXPECT_EQ(tab(x, y), backing(pair(x, y)));
      EXPECT_LE(tab.row(x).length(), backing.length());
      EXPECT_EQ(tab.row(x), row(x, backing));
    }
  }
}

TEST(Primitives, Numones) {
  EXPECT_EQ(numones(0, BitSet{5, 9}), 0u);
  EXPECT_EQ(numones(3, BitSet{0, 2, 4}), 2u);
  EXPECT_EQ(numones(6, BitSet{0, 2, 4}), 3u);
}

TEST(Primitives, NumonesRecurrenceAndPopcount) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    BitSet x = random_set(rng, 200);
    EXPECT_EQ(numones(0, x), 0u);
    for (Nat z = 0; z < x.length() + 4; ++z) EXPECT_EQ(numones(z + 1, x), numones(z, x) + (x(z) ? 1 : 0));
    Nat pop = 0;
    for (auto w : x.words()) pop += static_cast<Nat>(__builtin_popcountll(w));
    EXPECT_EQ(numones(x.length(), x), pop);
  }
}

TEST(Primitives, PdAndFse) {
  EXPECT_EQ(pd(0), 0u);
  EXPECT_EQ(pd(1), 0u);
  EXPECT_EQ(pd(7), 6u);
  EXPECT_EQ(fse(BitSet{0}, BitSet{1}), 0u);
  EXPECT_EQ(fse(BitSet{0, 1}, BitSet{0, 1}), 2u);
  EXPECT_EQ(fse(BitSet{1}, BitSet{1, 3}), 2u);
}

TEST(Primitives, FseDefiningEquations) {
  Rng rng(9);
  for (int t = 0; t < 500; ++t) {
    BitSet x = random_set(rng, 10), y = random_set(rng, 10);
    const Nat f = fse(x, y);
    EXPECT_LE(f, x.length());
    for (Nat z = 0; z < f; ++z) EXPECT_EQ(x(z), y(z));
    if (f < x.length()) {
      EXPECT_NE(x(f), y(f));
    }
  }
}

TEST(Primitives, MinWitnessAndComprehend) {
  BitSet s{2, 3};
  EXPECT_EQ(min_witness([&](Nat z) { return s(z); }, 5), 2u);
  EXPECT_EQ(min_witness([](Nat) { return false; }, 4), 4u);
  EXPECT_EQ(min_witness([](Nat) { return true; }, 0), 0u);
  EXPECT_EQ(comprehend([](Nat z) { return z % 2 == 0; }, 5), (BitSet{0, 2, 4}));
  EXPECT_EQ(comprehend([](Nat) { return false; }, 9), BitSet{});
  EXPECT_EQ(comprehend([](Nat) { return true; }, 3), (BitSet{0, 1, 2}));
}

TEST(Primitives, ExistsViaMinWitness) {
  Rng rng(21);
  for (int t = 0; t < 500; ++t) {
    BitSet p = random_set(rng, 12);
    const Nat bound = rng.below(14);
    bool exists = false;
    for (Nat z = 0; z < bound; ++z) exists = exists || p(z);
    EXPECT_EQ(exists, min_witness([&](Nat z) { return p(z); }, bound) < bound);
  }
}

TEST(Assignment, UnboundIsError) {
  Assignment env;
  env.bind("x", Nat{3});
  EXPECT_EQ(env.num("x"), 3u);
  EXPECT_THROW(env.num("y"), UnboundVariable);
  EXPECT_THROW(env.str("X"), UnboundVariable);
}

TEST(Text, BitSetForms) {
  EXPECT_EQ(parse_bitset("{}"), BitSet{});
  EXPECT_EQ(parse_bitset("{1, 3}"), (BitSet{1, 3}));
  EXPECT_EQ(parse_bitset("0b110"), (BitSet{1, 2}));
  EXPECT_EQ(parse_bitset("0b0"), BitSet{});
  EXPECT_THROW(parse_bitset("{3,1}"), ParseError);
  EXPECT_THROW(parse_bitset("{1,1}"), ParseError);
  EXPECT_THROW(parse_bitset("{1"), ParseError);
  EXPECT_EQ(to_set_string(BitSet{0, 2}), "{0,2}");
  EXPECT_EQ(to_binary_string(BitSet{0, 3}), "0b1001");
  EXPECT_EQ(to_binary_string(BitSet{}), "0b0");
}

TEST(Text, TableForm) {
  Table2D t = parse_table("[{0};{};{1,2}]");
  EXPECT_TRUE(t(0, 0));
  EXPECT_TRUE(t(2, 2));
  EXPECT_FALSE(t(1, 0));
  EXPECT_EQ(to_table_string(t), "[{0};{};{1,2}]");
  EXPECT_EQ(parse_table("[]").row_count(), 0u);
}

TEST(Text, Bindings) {
  Assignment env;
  parse_bindings("X={1,3},x=2,Y=0b11", env);
  EXPECT_EQ(env.str("X"), (BitSet{1, 3}));
  EXPECT_EQ(env.num("x"), 2u);
  EXPECT_EQ(env.str("Y"), (BitSet{0, 1}));
}

TEST(Rng, Deterministic) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c(7);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(c.below(13), 13u);
}
