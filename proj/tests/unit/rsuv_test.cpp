#include <gtest/gtest.h>

#include <chrono>

#include "tcforge/core/rng.hpp"
#include "tcforge/logic/eval.hpp"
#include "tcforge/logic/parser.hpp"
#include "tcforge/logic/printer.hpp"
#include "tcforge/logic/registry.hpp"
#include "tcforge/rsuv/count_via_mul.hpp"
#include "tcforge/rsuv/delta.hpp"
#include "tcforge/rsuv/encoding.hpp"
#include "tcforge/rsuv/translate.hpp"
#include "tcforge/tc0alg/addition.hpp"
#include "tcforge/tc0alg/multiply.hpp"
#include "tcforge/verify/generators.hpp"
#include "tcforge/verify/oracles.hpp"

using namespace tcforge;
using namespace tcforge::rsuv;
using verify::Big;

namespace {

const logic::FunctionRegistry& std_reg() {
  static const logic::FunctionRegistry reg = logic::FunctionRegistry::standard();
  return reg;
}

BitSet elems(std::initializer_list<Nat> xs) { return BitSet::from_elements(std::vector<Nat>(xs)); }

Big eval_text(const std::string& text, DeltaEnv env = {}) { return eval_delta(parse_delta(text), env); }

}  // namespace

TEST(Encoding, Examples) {
  EXPECT_EQ(encode_num(elems({0, 2})), 5);
  EXPECT_EQ(decode_num(BigNat(6)), elems({1, 2}));
  EXPECT_EQ(encode_num(BitSet{}), 0);
  EXPECT_TRUE(decode_num(BigNat(0)).empty());
}

TEST(Encoding, RoundTripSmall) {
  for (Nat v = 0; v < (Nat{1} << 16); ++v) {
    const BitSet s = decode_num(BigNat(v));
    ASSERT_EQ(verify::big_value(s), v);
    ASSERT_EQ(encode_num(s), v);
  }
}

TEST(Encoding, RoundTripWide) {
  Rng rng(4096);
  for (int trial = 0; trial < 200; ++trial) {
    const BitSet s = verify::random_bitset(rng, 4096);
    const BigNat a = encode_num(s);
    ASSERT_EQ(a, verify::big_value(s));
    ASSERT_EQ(decode_num(a), s);
  }
}

TEST(Encoding, ArithmeticHomomorphism) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const BitSet x = verify::random_bitset(rng, 300), y = verify::random_bitset(rng, 300);
    ASSERT_EQ(encode_num(tc0alg::add_bits(x, y)), encode_num(x) + encode_num(y));
    ASSERT_EQ(encode_num(tc0alg::mul_bits(x, y)), encode_num(x) * encode_num(y));
  }
}

TEST(DeltaTerms, Examples) {
  EXPECT_EQ(eval_text("MSP(13,2)"), 3);
  EXPECT_EQ(eval_text("BIT(2,13)"), 1);
  EXPECT_EQ(eval_text("3 # 5"), 64);
  EXPECT_EQ(eval_text("monus(3,5)"), 0);
  EXPECT_EQ(eval_text("len(0)"), 0);
  EXPECT_EQ(eval_text("half(7) + S(x) * 2", {{"x", 4}}), 13);
}

TEST(DeltaTerms, OperatorsAgainstReference) {
  for (Nat x = 0; x < 256; ++x) {
    const Big bx = x;
    ASSERT_EQ(eval_delta(delta::len(delta::lit(bx)), {}), verify::bin_len_oracle(bx));
    ASSERT_EQ(eval_delta(delta::half(delta::lit(bx)), {}), x / 2);
    ASSERT_EQ(eval_delta(delta::mod2(delta::lit(bx)), {}), x % 2);
    ASSERT_EQ(eval_delta(delta::succ(delta::lit(bx)), {}), x + 1);
    for (Nat y = 0; y < 256; ++y) {
      const Big by = y;
      const DeltaEnv env{{"x", bx}, {"y", by}};
      auto ev = [&](DeltaPtr t) { return eval_delta(t, env); };
      const DeltaPtr vx = delta::var("x"), vy = delta::var("y");
      ASSERT_EQ(ev(delta::add(vx, vy)), x + y);
      ASSERT_EQ(ev(delta::mul(vx, vy)), x * y);
      ASSERT_EQ(ev(delta::monus(vx, vy)), x >= y ? x - y : 0);
      ASSERT_EQ(ev(delta::smash(vx, vy)), verify::pow2_oracle(verify::bin_len_oracle(bx) * verify::bin_len_oracle(by)));
      Big shifted = bx;
      for (Nat i = 0; i < y; ++i) shifted /= 2;
      ASSERT_EQ(ev(delta::msp(vx, vy)), shifted);
      ASSERT_EQ(ev(delta::bit(vy, vx)), shifted % 2);
    }
  }
}

TEST(DeltaTerms, ParsePrintRoundTrip) {
  for (const char* text : {"MSP(x, len(y)) + 2 * S(z)", "bit(i, x # y)", "monus(half(x), mod2(y))"}) {
    const DeltaPtr t = parse_delta(text);
    EXPECT_TRUE(equal(parse_delta(to_string(t)), t)) << text;
  }
  EXPECT_THROW(parse_delta("MSP(x"), ParseError);
  EXPECT_THROW(parse_delta("x +"), ParseError);
}

TEST(DeltaFormulas, Evaluation) {
  EXPECT_TRUE(eval_delta(parse_delta_formula("E i < len(x) : bit(i, x) = 1 & i = 2"), {{"x", 13}}));
  EXPECT_FALSE(eval_delta(parse_delta_formula("E i < len(x) : bit(i, x) = 1 & i = 1"), {{"x", 13}}));
  EXPECT_TRUE(eval_delta(parse_delta_formula("A i < 4 : (i <= 3)"), {}));
  EXPECT_TRUE(eval_delta(parse_delta_formula("x < 3 -> S(x) <= 3"), {{"x", 2}}));
  EXPECT_THROW(eval_delta(parse_delta_formula("x = 1"), {}), DomainError);
}

TEST(Comprehension, Examples) {
  EXPECT_EQ(bit_comprehension([](Nat i) { return i % 2 == 0; }, 100), 0b1010101);
  EXPECT_EQ(bit_comprehension([](Nat) { return true; }, 0), 0);
  const BigNat x = 0b1101101;
  EXPECT_EQ(bit_comprehension([&](Nat i) { return eval_delta(delta::bit(delta::lit(i), delta::lit(x)), {}) == 1; }, x),
            x);
}

TEST(Comprehension, MatchesReference) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const BitSet keep = verify::random_bitset(rng, 80);
    const BigNat a = verify::big_value(verify::random_bitset_exact(rng, 1 + rng.below(80)));
    const BigNat got = bit_comprehension([&](Nat i) { return keep(i); }, a);
    ASSERT_EQ(got, verify::big_value(keep.prefix(verify::bin_len_oracle(a))));
  }
}

TEST(OpenInduction, Examples) {
  const auto leq_len = parse_delta_formula("x <= len(z)");
  const LindTrace ok = open_lind_check(leq_len, "x", 0b10110, {{"z", 0b10110}});
  EXPECT_TRUE(ok.held());

  const auto below3 = parse_delta_formula("x < 3");
  const LindTrace bad = open_lind_check(below3, "x", 0b11111, {});
  EXPECT_TRUE(bad.base);
  ASSERT_TRUE(bad.broken_step.has_value());
  EXPECT_EQ(*bad.broken_step, 3u);
  EXPECT_FALSE(bad.conclusion);
}

TEST(CountViaMul, Examples) {
  const auto five = count_via_mul(5);
  EXPECT_EQ(five.table, Table2D::from_pairs({{0, 0}, {1, 1}, {2, 1}, {3, 2}}));
  EXPECT_EQ(count_via_mul(0).table, Table2D::from_pairs({{0, 0}}));
  const auto ones = count_via_mul(255);
  EXPECT_EQ(ones.value_at(8), 8u);
}

TEST(CountViaMul, RandomAgainstPopcount) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const BitSet x = verify::random_bitset(rng, 200);
    const auto arr = count_via_mul(encode_num(x));
    ASSERT_TRUE(tc0alg::check_numones_array(x, arr));
    for (Nat z = 0; z <= x.length(); ++z) ASSERT_EQ(arr.value_at(z), verify::popcount_oracle(x.prefix(z)));
  }
}

TEST(CountViaMul, WideInput) {
  Rng rng(1024);
  const BitSet x = verify::random_bitset_exact(rng, 1024);
  const auto start = std::chrono::steady_clock::now();
  const auto arr = count_via_mul(encode_num(x));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(tc0alg::check_numones_array(x, arr));
  EXPECT_LT(secs, 30.0);
}

TEST(Translate, FlatExample) {
  const auto phi = logic::parse_formula("E z < |X| : X(z) & z = x");
  const FlatResult r = flat_translate(phi);
  ASSERT_EQ(r.number_for.at("X"), "x_s");
  EXPECT_EQ(to_string(r.formula), to_string(parse_delta_formula("E z < len(x_s) : bit(z, x_s) = 1 & z = x")));
}

TEST(Translate, RejectsOutsideFragment) {
  EXPECT_THROW(flat_translate(logic::parse_formula("E Y <= 3 : Y(0)")), UnsupportedFragment);
  EXPECT_THROW(flat_translate(logic::parse_formula("numones(3, X) = 1")), UnsupportedFragment);
  EXPECT_THROW(sharp_translate(parse_delta_formula("half(x) = 1"), {}), UnsupportedFragment);
  EXPECT_THROW(sharp_translate(parse_delta_formula("x = 1"), {{"x", "X"}}), UnsupportedFragment);
}

TEST(Translate, FlatPreservesTruth) {
  Rng rng(404);
  verify::FormulaShape shape;
  shape.threshold = false;
  shape.modular = false;
  verify::FormulaGenerator gen(rng, shape);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto phi = gen.formula();
    FlatResult r;
    try {
      r = flat_translate(phi);
    } catch (const UnsupportedFragment&) {
      continue;
    }
    ++checked;
    for (int k = 0; k < 4; ++k) {
      const Assignment env = gen.assignment();
      ASSERT_EQ(eval_delta(r.formula, encode_env(env, r.number_for)), logic::eval_formula(phi, env, std_reg()))
          << logic::to_string(phi);
    }
    const auto back = sharp_translate(r.formula, invert(r.number_for));
    ASSERT_TRUE(logic::equal(back, phi)) << logic::to_string(phi) << " vs " << logic::to_string(back);
  }
  EXPECT_GT(checked, 300);
}

TEST(Translate, SharpPreservesTruth) {
  const auto psi = parse_delta_formula("E i < len(x) : (bit(i, x) = 1 & ! (bit(i, y) = 1)) | (x = y & S(i) <= n)");
  const std::map<std::string, std::string> string_for{{"x", "X"}, {"y", "Y"}};
  const auto phi = sharp_translate(psi, string_for);
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const DeltaEnv env{{"x", rng.below(64)}, {"y", rng.below(64)}, {"n", rng.below(8)}};
    ASSERT_EQ(logic::eval_formula(phi, decode_env(env, string_for), std_reg()), eval_delta(psi, env));
  }
}
