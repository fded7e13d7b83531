#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "tcforge/core/rng.hpp"
#include "tcforge/tc0alg/addition.hpp"
#include "tcforge/tc0alg/counting.hpp"
#include "tcforge/tc0alg/multiply.hpp"
#include "tcforge/tc0alg/php.hpp"
#include "tcforge/tc0alg/sum.hpp"
#include "tcforge/verify/generators.hpp"
#include "tcforge/verify/oracles.hpp"

using namespace tcforge;
using namespace tcforge::tc0alg;
using verify::big_bits;
using verify::big_value;

namespace {

BitSet bits_of(Nat v) { return big_bits(verify::Big(v)); }

Table2D rows(std::vector<BitSet> r) { return Table2D::from_rows(std::move(r)); }

// Table with row i of length c[i].
Table2D tallies(const std::vector<Nat>& c) {
  std::vector<BitSet> r;
  for (Nat v : c) r.push_back(BitSet::interval(0, v));
  return rows(std::move(r));
}

// Independent ripple-carry adder.
bool ripple_carry(Nat i, const BitSet& x, const BitSet& y) {
  bool c = false;
  for (Nat j = 0; j < i; ++j) c = (x(j) + y(j) + c) >= 2;
  return c;
}

}  // namespace

TEST(Carry, Examples) {
  EXPECT_FALSE(carry(0, BitSet{0}, BitSet{0}));
  EXPECT_TRUE(carry(1, BitSet{0}, BitSet{0}));
  EXPECT_TRUE(carry(2, BitSet{0, 1}, BitSet{0}));
}

TEST(Carry, MatchesRippleAdder) {
  for (Nat a = 0; a < 64; ++a)
    for (Nat b = 0; b < 64; ++b)
      for (Nat i = 0; i < 8; ++i) ASSERT_EQ(carry(i, bits_of(a), bits_of(b)), ripple_carry(i, bits_of(a), bits_of(b)));
}

TEST(AddBits, Examples) {
  EXPECT_EQ(add_bits(BitSet{}, BitSet{1, 4}), (BitSet{1, 4}));
  EXPECT_EQ(add_bits(BitSet{0, 1}, BitSet{0}), BitSet{2});
  EXPECT_EQ(add_bits(BitSet{0, 2}, BitSet{1, 2}), (BitSet{0, 1, 3}));
}

TEST(AddBits, ExhaustiveSmall) {
  for (Nat a = 0; a < 256; ++a)
    for (Nat b = 0; b < 256; ++b) {
      BitSet s = add_bits(bits_of(a), bits_of(b));
      ASSERT_EQ(big_value(s), a + b);
      ASSERT_LE(s.length(), bits_of(a).length() + bits_of(b).length());
    }
}

TEST(AddBits, RandomLargeCommutativeAndCorrect) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    BitSet x = verify::random_bitset(rng, 4096), y = verify::random_bitset(rng, 4096);
    BitSet s = add_bits(x, y);
    ASSERT_EQ(big_value(s), big_value(x) + big_value(y));
    ASSERT_EQ(s, add_bits(y, x));
  }
}

TEST(AddBits, Associative) {
  for (Nat a = 0; a < 64; ++a)
    for (Nat b = 0; b < 64; ++b)
      for (Nat c = 0; c < 64; c += 3) {
        BitSet x = bits_of(a), y = bits_of(b), z = bits_of(c);
        ASSERT_EQ(add_bits(x, add_bits(y, z)), add_bits(add_bits(x, y), z));
      }
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    BitSet x = verify::random_bitset(rng, 1024), y = verify::random_bitset(rng, 1024),
           z = verify::random_bitset(rng, 1024);
    ASSERT_EQ(add_bits(x, add_bits(y, z)), add_bits(add_bits(x, y), z));
  }
}

TEST(NumonesArray, Examples) {
  EXPECT_EQ(numones_array(BitSet{}).table, rows({BitSet{0}}));
  EXPECT_EQ(numones_array(BitSet{0, 2}).table, rows({BitSet{0}, BitSet{1}, BitSet{1}, BitSet{2}}));
  EXPECT_EQ(numones_array(BitSet{1}).table, rows({BitSet{0}, BitSet{0}, BitSet{1}}));
}

TEST(CheckNumonesArray, Examples) {
  EXPECT_TRUE(check_numones_array(BitSet{0, 2}, numones_array(BitSet{0, 2})));
  EXPECT_FALSE(check_numones_array(BitSet{0}, rows({BitSet{0}, BitSet{0}})));
  EXPECT_TRUE(check_numones_array(BitSet{}, rows({BitSet{0}})));
}

TEST(CheckNumonesArray, AcceptsConstructionRejectsMutations) {
  Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    BitSet x = verify::random_bitset(rng, 40);
    CountingArray y = numones_array(x);
    ASSERT_TRUE(check_numones_array(x, y));
    for (Nat z = 0; z <= x.length(); ++z) ASSERT_EQ(y.value_at(z), numones(z, x));
    for (int k = 0; k < 20; ++k) {
      Table2D bad = y.table;
      const Nat z = rng.below(x.length() + 1), v = rng.below(x.length() + 1);
      bad.assign(z, v, !bad(z, v));
      ASSERT_FALSE(check_numones_array(x, bad));
    }
  }
}

TEST(ModmArray, Examples) {
  EXPECT_EQ(modm_array(2, BitSet{0, 1}), rows({BitSet{0}, BitSet{1}, BitSet{0}}));
  EXPECT_EQ(modm_array(3, BitSet{}), rows({BitSet{0}}));
  EXPECT_EQ(modm_array(2, BitSet{0, 2, 3}), rows({BitSet{0}, BitSet{1}, BitSet{1}, BitSet{0}, BitSet{1}}));
  EXPECT_THROW(modm_array(1, BitSet{}), DomainError);
}

TEST(ModmArray, SatisfiesFormulaAndRejectsMutations) {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const Nat m = 2 + rng.below(5);
    BitSet x = verify::random_bitset(rng, 30);
    Table2D y = modm_array(m, x);
    ASSERT_TRUE(check_modm_array(m, x, y));
    for (Nat z = 0; z <= x.length(); ++z) ASSERT_TRUE(y(z, numones(z, x) % m));
    Table2D bad = y;
    const Nat z = rng.below(x.length() + 1), v = rng.below(m);
    bad.assign(z, v, !bad(z, v));
    ASSERT_FALSE(check_modm_array(m, x, bad));
  }
}

TEST(MultiCountingArrays, Examples) {
  auto one = multi_counting_arrays(1, rows({BitSet{0}}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], numones_array(BitSet{0}));
  auto two = multi_counting_arrays(2, rows({BitSet{0}, BitSet{1}}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_TRUE(check_numones_array(BitSet{0}, two[0]));
  EXPECT_TRUE(check_numones_array(BitSet{1}, two[1]));
  EXPECT_TRUE(multi_counting_arrays(0, rows({BitSet{0}})).empty());
}

TEST(MultiCountingArrays, EverySliceMatchesItsRow) {
  Rng rng(44);
  for (int t = 0; t < 200; ++t) {
    const Nat b = rng.below(8);
    Table2D x = verify::random_table(rng, b + rng.below(3), 20);
    auto slices = multi_counting_arrays(b, x);
    ASSERT_EQ(slices.size(), b);
    for (Nat u = 0; u < b; ++u) {
      ASSERT_TRUE(check_numones_array(x.row(u), slices[u]));
      ASSERT_EQ(slices[u], numones_array(x.row(u)));
    }
  }
}

TEST(Transpose, Examples) {
  EXPECT_EQ(transpose(2, 2, rows({BitSet{0}, BitSet{1}})), rows({BitSet{0}, BitSet{1}}));
  EXPECT_EQ(transpose(0, 0, Table2D{}), Table2D{});
  EXPECT_EQ(transpose(2, 2, rows({BitSet{0, 1}, BitSet{}})), rows({BitSet{0}, BitSet{0}}));
}

TEST(AddCols, Examples) {
  EXPECT_EQ(add_cols(2, 2, rows({BitSet{0}, BitSet{0}})), rows({BitSet{0, 1}, BitSet{}}));
  EXPECT_EQ(add_cols(3, 4, rows({BitSet{}, BitSet{}})), Table2D{});
  EXPECT_EQ(add_cols(3, 1, rows({BitSet{0}, BitSet{0}, BitSet{0}})), rows({BitSet{0, 1, 2}}));
}

TEST(Ssum, Examples) {
  EXPECT_EQ(ssum(rows({BitSet{0, 1}}), 0, 1, 2), 2u);
  EXPECT_EQ(ssum(rows({BitSet{0, 1}}), 0, 0, 2), 0u);
  EXPECT_EQ(ssum(tallies({2, 1}), 0, 2, 2), 4u);
  EXPECT_EQ(ssum(Table2D{}, 0, 3, 4), 0u);
}

TEST(Ssum, RecurrenceBoundAndDenseAgreement) {
  Rng rng(45);
  for (int t = 0; t < 300; ++t) {
    const Nat n = rng.below(12), m = rng.below(12);
    std::vector<Nat> c(m);
    for (auto& v : c) v = rng.below(n + 1);
    Table2D w = tallies(c);
    const Nat a = rng.below(m + 1);
    Nat expect = 0;
    for (Nat ell = 0; ell < 7; ++ell) {
      const Nat s = ssum(w, a, ell, n);
      ASSERT_EQ(s, expect);
      ASSERT_EQ(s, ssum_dense(w, a, ell, n));
      ASSERT_TRUE(n == 0 ? s == 0 : s < (n << ell));
      const Nat next = a + ell < m ? c[a + ell] : 0;
      ASSERT_EQ(ssum(w, a, ell + 1, n), s + (next << ell));
      expect = s + (next << ell);
    }
  }
}

TEST(BlockString, MembershipMatchesDefinition) {
  Table2D w = tallies({2, 0, 3});
  BlockString y(w, 0, 3, 3);
  BitSet dense = y.materialize();
  for (Nat j = 0; j < 3; ++j)
    for (Nat u = 0; u < (Nat{1} << j); ++u)
      for (Nat v = 0; v < 3; ++v) {
        const Nat p = ((Nat{1} << j) - 1) * 3 + u * 3 + v;
        EXPECT_EQ(y.contains(p), v < w.row(j).length());
        EXPECT_EQ(dense(p), v < w.row(j).length());
      }
  for (Nat z = 0; z < 25; ++z) EXPECT_EQ(y.count_below(z), numones(z, dense));
}

TEST(SumPrime, Examples) {
  EXPECT_EQ(sum_prime(2, 2, tallies({2, 1})), BitSet{2});
  EXPECT_EQ(sum_prime(4, 3, Table2D{}), BitSet{});
  EXPECT_EQ(sum_prime(5, 3, tallies({3, 0, 2, 1, 3})), (BitSet{0, 1, 6}));
  EXPECT_EQ(big_value(BitSet{0, 1, 6}), 3 + 0 + 8 + 8 + 48);
  EXPECT_THROW(sum_prime(2, 1, tallies({2, 1})), DomainError);
}

TEST(SumPrime, PlanInvariants) {
  Rng rng(46);
  for (int t = 0; t < 300; ++t) {
    const Nat n = rng.below(40), m = rng.below(60);
    std::vector<Nat> c(m);
    for (auto& v : c) v = rng.below(n + 1);
    SumResult r = sum_prime_planned(m, n, tallies(c));
    verify::Big want = 0;
    for (Nat i = 0; i < m; ++i) want += verify::Big(c[i]) << i;
    ASSERT_EQ(big_value(r.value), want);
    const SumPlan& p = r.plan;
    ASSERT_EQ(p.ell, n <= 1 ? 1 : 1 + static_cast<Nat>(std::bit_width(n - 1)));
    ASSERT_EQ(p.k, (m + 2 * p.ell - 1) / (2 * p.ell));
    ASSERT_EQ(p.block_sums.size(), 2 * p.k);
    verify::Big blocks = 0;
    for (Nat i = 0; i < p.block_sums.size(); ++i) {
      ASSERT_LT(p.block_sums[i], Nat{1} << (2 * p.ell));
      blocks += verify::Big(p.block_sums[i]) << (i * p.ell);
    }
    ASSERT_EQ(big_value(p.low) + big_value(p.high), blocks);
  }
}

TEST(SumPrime, ObserverSeesEveryCall) {
  Nat calls = 0;
  {
    ObserveSums guard([&](const SumPlan&) { ++calls; });
    mul_bits(BitSet{0, 1}, BitSet{0, 1});
    sum_prime(2, 2, tallies({2, 1}));
  }
  mul_bits(BitSet{0, 1}, BitSet{0, 1});
  EXPECT_EQ(calls, 2u);
}

TEST(SumRows, Examples) {
  EXPECT_EQ(sum_rows(3, 2, rows({BitSet{0}, BitSet{0}, BitSet{1}})), BitSet{2});
  EXPECT_EQ(sum_rows(1, 5, rows({BitSet{0, 3, 4}})), (BitSet{0, 3, 4}));
  EXPECT_EQ(sum_rows(0, 5, rows({BitSet{0, 3, 4}})), BitSet{});
}

TEST(SumRows, RowAppendLaw) {
  Rng rng(47);
  for (int t = 0; t < 100; ++t) {
    const Nat n = rng.below(30), m = 1 + rng.below(60);
    Table2D z = verify::random_table(rng, n + 1, m);
    ASSERT_EQ(sum_rows(n + 1, m, z), add_bits(sum_rows(n, m, z), z.row(n)));
    verify::Big want = 0;
    for (Nat j = 0; j < n; ++j) want += big_value(z.row(j));
    ASSERT_EQ(big_value(sum_rows(n, m, z)), want);
  }
}

TEST(Otimes, Examples) {
  EXPECT_EQ(otimes(BitSet{0, 1}, BitSet{1}), rows({BitSet{}, BitSet{1, 2}}));
  EXPECT_EQ(otimes(BitSet{}, BitSet{0, 1}), Table2D{});
  EXPECT_EQ(otimes(BitSet{0, 1}, BitSet{}), Table2D{});
  EXPECT_EQ(otimes(BitSet{0}, BitSet{0}), rows({BitSet{0}}));
}

TEST(MulBits, Examples) {
  EXPECT_EQ(mul_bits(BitSet{0, 1}, BitSet{0, 1}), (BitSet{0, 3}));
  EXPECT_EQ(mul_bits(BitSet{1}, BitSet{1}), BitSet{2});
  EXPECT_EQ(mul_bits(BitSet{0, 5}, BitSet{}), BitSet{});
}

TEST(MulBits, ExhaustiveSmall) {
  for (Nat a = 0; a < 64; ++a)
    for (Nat b = 0; b < 64; ++b) ASSERT_EQ(big_value(mul_bits(bits_of(a), bits_of(b))), a * b) << a << "*" << b;
}

TEST(MulBits, RandomLarge) {
  Rng rng(48);
  for (int t = 0; t < 10; ++t) {
    BitSet x = verify::random_bitset_exact(rng, 2048), y = verify::random_bitset_exact(rng, 2048);
    ASSERT_EQ(big_value(mul_bits(x, y)), big_value(x) * big_value(y));
  }
}

TEST(MulBits, CommutativeAndDistributive) {
  Rng rng(49);
  for (int t = 0; t < 100; ++t) {
    BitSet x = verify::random_bitset(rng, 256), y = verify::random_bitset(rng, 256), z = verify::random_bitset(rng, 256);
    ASSERT_EQ(mul_bits(x, y), mul_bits(y, x));
    ASSERT_EQ(mul_bits(x, add_bits(y, z)), add_bits(mul_bits(x, y), mul_bits(x, z)));
  }
}

TEST(Numones, PermutationInvariance) {
  Rng rng(50);
  for (int t = 0; t < 300; ++t) {
    const Nat ell = rng.below(65);
    BitSet x = verify::random_bitset(rng, ell + 10);
    std::vector<Nat> perm(ell);
    std::iota(perm.begin(), perm.end(), 0);
    for (Nat i = ell; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    BitSet y;
    for (Nat i = 0; i < ell; ++i)
      if (x(i)) y.insert(perm[i]);
    ASSERT_EQ(numones(ell, x), numones(ell, y));
  }
}

TEST(Prefix, Examples) {
  EXPECT_EQ(prefix(BitSet{0, 2, 5}, 3), (BitSet{0, 2}));
  EXPECT_EQ(prefix(BitSet{0, 2, 5}, 0), BitSet{});
  EXPECT_EQ(prefix(BitSet{0, 2, 5}, 6), (BitSet{0, 2, 5}));
}

TEST(ToStringShift, Examples) {
  EXPECT_EQ(to_string_shift(5, 2), (BitSet{2, 4}));
  EXPECT_EQ(to_string_shift(0, 7), BitSet{});
  EXPECT_EQ(to_string_shift(1, 0), BitSet{0});
}

TEST(Php, Functions) {
  EXPECT_EQ(bounded_union(3, BitSet{0}, BitSet{1, 5}), (BitSet{0, 1}));
  EXPECT_EQ(finite_union(2, 3, rows({BitSet{0}, BitSet{2}})), (BitSet{0, 2}));
  EXPECT_EQ(tot_numones(2, 3, rows({BitSet{0, 1}, BitSet{2}})), 3u);
  EXPECT_EQ(concat_rows(2, 3, rows({BitSet{0, 1}, BitSet{2}})), (BitSet{0, 1, 5}));
}

TEST(Php, Collisions) {
  EXPECT_EQ(php_collision(1, rows({BitSet{0, 1}})), (Collision{0, 1, 0}));
  EXPECT_EQ(php_collision(2, rows({BitSet{0, 2}, BitSet{1}})), (Collision{0, 2, 0}));
  EXPECT_THROW(php_collision(1, rows({BitSet{0}})), DomainError);
}

TEST(Php, LemmaInequalities) {
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const Nat a = rng.below(10), b = rng.below(20);
    Table2D z = verify::random_table(rng, a + 1, b + 3);
    BitSet x = verify::random_bitset(rng, b + 3), y = verify::random_bitset(rng, b + 3);
    ASSERT_LE(numones(b, bounded_union(b, x, y)), numones(b, x) + numones(b, y));
    ASSERT_EQ(tot_numones(a + 1, b, z), tot_numones(a, b, z) + numones(b, z.row(a)));
    ASSERT_LE(numones(b, finite_union(a, b, z)), tot_numones(a, b, z));
    Nat k = 0;
    for (Nat r = 0; r < a; ++r) k = std::max(k, numones(b, z.row(r)));
    ASSERT_LE(tot_numones(a, b, z), a * k);
  }
}

TEST(Php, RandomTotalMaps) {
  Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    const Nat a = 1 + rng.below(60);
    Table2D x;
    for (Nat z = 0; z <= a; ++z) {
      x.set(rng.below(a), z);
      if (rng.chance(1, 5)) x.set(rng.below(a), z);
    }
    Collision c = php_collision(a, x);
    ASSERT_LT(c.hole, a);
    ASSERT_LT(c.earlier, c.later);
    ASSERT_LE(c.later, a);
    ASSERT_TRUE(x(c.hole, c.later));
    ASSERT_TRUE(x(c.hole, c.earlier));
  }
}
