#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcforge/circuits/compile.hpp"
#include "tcforge/circuits/mul.hpp"
#include "tcforge/core/rng.hpp"
#include "tcforge/kernel/text.hpp"
#include "tcforge/logic/eval.hpp"
#include "tcforge/logic/printer.hpp"
#include "tcforge/logic/transform.hpp"
#include "tcforge/rsuv/count_via_mul.hpp"
#include "tcforge/rsuv/delta.hpp"
#include "tcforge/rsuv/translate.hpp"
#include "tcforge/subp/gap.hpp"
#include "tcforge/subp/nck.hpp"
#include "tcforge/subp/recursion.hpp"
#include "tcforge/tc0alg/addition.hpp"
#include "tcforge/tc0alg/counting.hpp"
#include "tcforge/tc0alg/multiply.hpp"
#include "tcforge/tc0alg/php.hpp"
#include "tcforge/tc0alg/sum.hpp"
#include "tcforge/verify/circuit_inputs.hpp"
#include "tcforge/verify/formula_oracle.hpp"
#include "tcforge/verify/generators.hpp"
#include "tcforge/verify/oracles.hpp"
#include "tcforge/verify/structures.hpp"

// Named property suites. Each runs a fixed number of seeded trials against an
// independent oracle and reports per-property trial and failure counts with
// the first counterexample.
namespace tcforge::verify {

struct PropertyResult {
  std::string name;
  Nat trials = 0;
  Nat failures = 0;
  std::string counterexample;

  bool passed() const { return failures == 0 && trials > 0; }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++trials;
    if (ok) return;
    if (failures++ == 0) counterexample = describe();
  }
};

struct SuiteReport {
  std::string id;
  std::string title;
  Nat seed = 0;
  std::deque<PropertyResult> properties;  // references stay valid as it grows
  std::vector<std::string> notes;  // deterministic facts worth printing
  double seconds = 0;

  PropertyResult& property(const std::string& name) {
    for (auto& p : properties)
      if (p.name == name) return p;
    properties.push_back(PropertyResult{name, 0, 0, {}});
    return properties.back();
  }

  void within(const std::string& name, double limit, double elapsed) {
    property(name).record(elapsed < limit, [&] {
      std::ostringstream s;
      s << "took " << elapsed << " s";
      return s.str();
    });
  }

  bool passed() const {
    return !properties.empty() && std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
  }
};

namespace suite_detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

inline const logic::FunctionRegistry& std_reg() {
  static const logic::FunctionRegistry reg = logic::FunctionRegistry::standard();
  return reg;
}

inline BitSet bits_of(Nat v) { return BitSet::from_words({v}); }

inline std::string show(const BitSet& x) { return to_binary_string(x); }

inline std::string show(const Assignment& env) {
  std::string out;
  for (const auto& [k, v] : env.nums()) out += k + "=" + std::to_string(v) + " ";
  for (const auto& [k, v] : env.strs()) out += k + "=" + to_set_string(v) + " ";
  return out;
}

inline std::string show(const circuits::InputValues& in) {
  std::string out;
  for (const auto& [name, v] : in) {
    out += name + "=";
    if (auto* s = std::get_if<BitSet>(&v)) out += to_set_string(*s) + " ";
    else out += std::to_string(std::get<Nat>(v)) + " ";
  }
  return out;
}

// Block-sum bounds on every sum_prime call while alive.
class BlockBoundMonitor {
 public:
  explicit BlockBoundMonitor(SuiteReport& report)
      : report_(report), guard_([this](const tc0alg::SumPlan& p) { check(p); }) {}

 private:
  void check(const tc0alg::SumPlan& p) {
    bool two_ell = true, four_n2 = true, ssum = true;
    std::string bad;
    const Nat pow_ell = tc0alg::pow2(p.ell);
    for (Nat i = 0; i < p.block_sums.size(); ++i) {
      const Nat b = p.block_sums[i];
      const bool t = 2 * p.ell >= 64 || b < (Nat{1} << (2 * p.ell));
      const bool f = b < 4 * p.n * p.n || (p.n == 0 && b == 0);
      const bool s = b <= p.n * (pow_ell - 1);
      if ((!t || !f || !s) && bad.empty())
        bad = "n=" + std::to_string(p.n) + " m=" + std::to_string(p.m) + " block " + std::to_string(i) + " sum " +
              std::to_string(b);
      two_ell = two_ell && t;
      four_n2 = four_n2 && f;
      ssum = ssum && s;
    }
    report_.property("block sum < 2^(2 ell)").record(two_ell, [&] { return bad; });
    report_.property("block sum < 4 n^2").record(four_n2, [&] { return bad; });
    report_.property("ssum <= n (2^ell - 1) < n 2^ell").record(ssum, [&] { return bad; });
  }

  SuiteReport& report_;
  tc0alg::ObserveSums guard_;
};

}  // namespace suite_detail

// -- multiplication and sums ----------------------------------------------

inline void mul_oracle(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto t0 = Clock::now();
  auto& small = r.property("exhaustive len <= 6 pairs");
  for (Nat a = 0; a < 64; ++a)
    for (Nat b = 0; b < 64; ++b)
      small.record(big_value(tc0alg::mul_bits(bits_of(a), bits_of(b))) == Big(a * b),
                   [&] { return std::to_string(a) + " * " + std::to_string(b); });
  r.within("exhaustive part under 30 s", 30, since(t0));

  t0 = Clock::now();
  auto& wide = r.property("random 2048-bit pairs");
  for (int t = 0; t < 200; ++t) {
    const BitSet x = random_bitset_exact(rng, 2048), y = random_bitset_exact(rng, 2048);
    wide.record(big_value(tc0alg::mul_bits(x, y)) == big_value(x) * big_value(y),
                [&] { return show(x) + " * " + show(y); });
  }
  r.within("random part under 120 s", 120, since(t0));
}

inline void mul_laws(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto& comm = r.property("X*Y = Y*X");
  auto& dist = r.property("X*(Y+Z) = X*Y + X*Z");
  auto& assoc = r.property("X+(Y+Z) = (X+Y)+Z");
  for (int t = 0; t < 500; ++t) {
    const BitSet x = random_bitset(rng, 256), y = random_bitset(rng, 256), z = random_bitset(rng, 256);
    auto triple = [&] { return show(x) + ", " + show(y) + ", " + show(z); };
    comm.record(tc0alg::mul_bits(x, y) == tc0alg::mul_bits(y, x), triple);
    dist.record(tc0alg::mul_bits(x, tc0alg::add_bits(y, z)) ==
                    tc0alg::add_bits(tc0alg::mul_bits(x, y), tc0alg::mul_bits(x, z)),
                triple);
    assoc.record(tc0alg::add_bits(x, tc0alg::add_bits(y, z)) == tc0alg::add_bits(tc0alg::add_bits(x, y), z), triple);
  }
}

inline void row_append(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto& law = r.property("Sum(n+1, m, Z) = Sum(n, m, Z) + Z[n]");
  auto& value = r.property("Sum(n, m, Z) equals bignum row total");
  for (int t = 0; t < 200; ++t) {
    const Nat n = rng.below(40), m = 1 + rng.below(64);
    const Table2D z = random_table(rng, n + 1, m);
    auto where = [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " Z=" + to_table_string(z); };
    const BitSet s = tc0alg::sum_rows(n, m, z);
    law.record(tc0alg::sum_rows(n + 1, m, z) == tc0alg::add_bits(s, z.row(n)), where);
    Big want = 0;
    for (Nat j = 0; j < n; ++j) want += big_value(z.row(j));
    value.record(big_value(s) == want, where);
  }
}

inline void perm_count(SuiteReport& r, Rng& rng) {
  auto& p = r.property("numones(l, X) = numones(l, Y) for Y a permutation of X below l");
  for (int t = 0; t < 500; ++t) {
    const Nat ell = rng.below(65);
    const BitSet x = random_bitset(rng, ell + 8);
    std::vector<Nat> perm(ell);
    std::iota(perm.begin(), perm.end(), Nat{0});
    for (Nat i = ell; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    BitSet y;
    for (Nat i = 0; i < ell; ++i)
      if (x(i)) y.insert(perm[i]);
    // Bits at or above l are carried over unchanged.
    x.for_each([&](Nat i) {
      if (i >= ell) y.insert(i);
    });
    p.record(numones(ell, x) == numones(ell, y) && numones(ell, x) == popcount_oracle(x.prefix(ell)),
             [&] { return "l=" + std::to_string(ell) + " X=" + to_set_string(x) + " Y=" + to_set_string(y); });
  }
}

inline void block_bounds(SuiteReport& r, Rng& rng) {
  SuiteReport inner;
  {
    suite_detail::BlockBoundMonitor monitor(r);
    mul_oracle(inner, rng);
    mul_laws(inner, rng);
    row_append(inner, rng);
  }
  r.property("observed suites pass").record(inner.passed(), [&] { return std::string("a multiplication suite failed"); });
}

// -- counting and formulas --------------------------------------------------

inline void counting_arrays(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto& accept = r.property("check accepts numones_array(X)");
  auto& values = r.property("numones_array(X) rows equal prefix popcounts");
  auto& slices = r.property("check accepts every multi-counting slice");
  auto& reject = r.property("check rejects single-cell mutations");
  for (int t = 0; t < 500; ++t) {
    const Nat b = 1 + rng.below(6);
    const Table2D rows = random_table(rng, b, 48);
    const BitSet& x = rows.row(0);
    const auto arr = tc0alg::numones_array(x);
    accept.record(tc0alg::check_numones_array(x, arr), [&] { return to_set_string(x); });
    bool same = true;
    for (Nat z = 0; z <= x.length(); ++z) same = same && arr.value_at(z) == popcount_oracle(x.prefix(z));
    values.record(same, [&] { return to_set_string(x); });
    const auto multi = tc0alg::multi_counting_arrays(b, rows);
    bool all = multi.size() == b;
    for (Nat u = 0; all && u < b; ++u) all = tc0alg::check_numones_array(rows.row(u), multi[u]);
    slices.record(all, [&] { return to_table_string(rows); });
    for (int k = 0; k < 100; ++k) {
      Table2D bad = arr.table;
      const Nat z = rng.below(x.length() + 1), v = rng.below(x.length() + 1);
      bad.assign(z, v, !bad(z, v));
      reject.record(!tc0alg::check_numones_array(x, bad), [&] {
        return to_set_string(x) + " flip (" + std::to_string(z) + "," + std::to_string(v) + ")";
      });
    }
  }
}

inline void quantifiers(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  FormulaShape shape;
  shape.counting_atoms = true;
  FormulaGenerator gen(rng, shape);
  auto& p = r.property("evaluator agrees with brute-force enumeration");
  auto& th = r.property("Th[s] counts at least s witnesses");
  auto& mod = r.property("Mod[m] counts 1 modulo m");
  for (int t = 0; t < 1000; ++t) {
    const auto f = gen.formula();
    const Assignment env = gen.assignment();
    p.record(logic::eval_formula(f, env, std_reg()) == oracle_eval(f, env, shape.max_bound + 1),
             [&] { return logic::to_string(f) + " at " + show(env); });

    // Direct count of witnesses of X(z) below a bound.
    const BitSet x = env.str("X");
    const Nat bound = rng.below(shape.max_bound + 2), s = rng.below(bound + 2), m = 1 + rng.below(4);
    Nat hits = 0;
    for (Nat z = 0; z < bound; ++z) hits += x(z) ? 1 : 0;
    using namespace logic::ast;
    const auto body = in(var("z"), svar("X"));
    th.record(logic::eval_formula(thq(lit(s), "z", lit(bound), body), env, std_reg()) == (hits >= s),
              [&] { return "s=" + std::to_string(s) + " bound=" + std::to_string(bound) + " " + show(env); });
    mod.record(logic::eval_formula(modm(m, "z", lit(bound), body), env, std_reg()) == (hits % m == 1 % m),
               [&] { return "m=" + std::to_string(m) + " bound=" + std::to_string(bound) + " " + show(env); });
  }
}

inline void elimination(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  FormulaShape shape;
  shape.modular = false;
  shape.max_bound = 5;
  FormulaGenerator gen(rng, shape);
  auto& lower = r.property("lower-th preserves truth");
  auto& elim = r.property("eliminate-counting preserves truth");
  auto& clean = r.property("no counting symbols remain");
  auto& depth = r.property("nesting depth strictly decreases per round");
  for (int t = 0; t < 200; ++t) {
    const auto f = gen.formula();
    const auto l = logic::lower_th_to_count(f, std_reg());
    const auto e = logic::eliminate_counting(l.formula, l.registry);
    clean.record(logic::symbols(e.formula).empty(), [&] { return logic::to_string(f); });
    for (const auto& step : e.trace)
      depth.record(step.depth_after < step.depth_before, [&] { return logic::to_string(f) + " at " + step.symbol; });
    for (int k = 0; k < 100; ++k) {
      const Assignment env = gen.assignment();
      const bool want = logic::eval_formula(f, env, std_reg());
      lower.record(logic::eval_formula(l.formula, env, l.registry) == want,
                   [&] { return logic::to_string(f) + " at " + show(env); });
      elim.record(logic::eval_formula(e.formula, env, std_reg()) == want,
                  [&] { return logic::to_string(f) + " at " + show(env); });
    }
  }
  // Some rounds must have been observed at all.
  depth.record(depth.trials > 0, [] { return std::string("no elimination rounds observed"); });
}

// -- circuits ---------------------------------------------------------------

inline void circuit_diff(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  using namespace circuits;
  auto agree = [&](PropertyResult& p, const Circuit& c, const logic::FormulaPtr& phi) {
    const auto bad = find_mismatch(c.inputs(), rng, [&](const InputValues& in) {
      return evaluate(c, in)[0] == logic::eval_formula(phi, to_assignment(in), std_reg());
    });
    p.record(!bad, [&] { return logic::to_string(phi) + " at " + show(*bad); });
  };

  FormulaShape sigma;
  sigma.max_bound = 5;
  sigma.threshold = false;
  sigma.modular = false;
  FormulaGenerator sgen(rng, sigma);
  auto& s0 = r.property("compile sigma0 matches evaluator");
  for (int t = 0; t < 100; ++t) {
    const auto phi = sgen.formula();
    for (const char* layout : {"X:4,Y:3,x:4", "X:9,Y:9,x:6"}) agree(s0, compile_sigma0(phi, parse_layout(layout)), phi);
  }

  FormulaShape counting;
  counting.max_bound = 4;
  counting.counting_atoms = true;
  FormulaGenerator tgen(rng, counting);
  auto& tc = r.property("compile tc0 matches evaluator");
  for (int t = 0; t < 100; ++t) {
    const auto phi = tgen.formula();
    for (const char* layout : {"X:4,Y:4,x:4", "X:8,Y:8,x:5"})
      agree(tc, compile_tc0(phi, parse_layout(layout), std_reg()), phi);
  }

  auto& mul = r.property("compile mul matches mul_bits");
  for (Nat n : {1, 2, 4, 8}) {
    const Circuit c = compile_mul(n);
    const auto bad = find_mismatch(c.inputs(), rng, [&](const InputValues& in) {
      const BitSet want = tc0alg::mul_bits(std::get<BitSet>(in.at("X")), std::get<BitSet>(in.at("Y")));
      const auto out = evaluate(c, in);
      for (Nat i = 0; i < out.size(); ++i)
        if (out[i] != want(i)) return false;
      return want.length() <= out.size();
    });
    mul.record(!bad, [&] { return "n=" + std::to_string(n) + " at " + show(*bad); });
  }
}

struct MulPoint {
  Nat n = 0;
  circuits::Metrics metrics;
  double seconds = 0;
};

inline std::vector<MulPoint> bench_mul(const std::vector<Nat>& sizes) {
  std::vector<MulPoint> out;
  for (Nat n : sizes) {
    const auto t0 = suite_detail::Clock::now();
    const circuits::Circuit c = circuits::compile_mul(n);
    out.push_back({n, c.metrics(), suite_detail::since(t0)});
  }
  return out;
}

inline void mul_depth(SuiteReport& r, Rng&) {
  using namespace suite_detail;
  const auto t0 = Clock::now();
  const auto points = bench_mul({4, 8, 16, 32, 64});
  const auto& base = points.front();
  // C fitted at n = 4.
  const double c = static_cast<double>(base.metrics.size) / (4.0 * 4.0 * 4.0);
  for (const auto& p : points) {
    r.notes.push_back("n=" + std::to_string(p.n) + " depth=" + std::to_string(p.metrics.depth) +
                      " size=" + std::to_string(p.metrics.size) + " wires=" + std::to_string(p.metrics.wires));
    r.property("depth identical across n").record(p.metrics.depth == base.metrics.depth, [&] {
      return "n=" + std::to_string(p.n) + " depth " + std::to_string(p.metrics.depth);
    });
    const double envelope = c * static_cast<double>(p.n * p.n * p.n);
    r.property("size within C n^3").record(static_cast<double>(p.metrics.size) <= envelope, [&] {
      return "n=" + std::to_string(p.n) + " size " + std::to_string(p.metrics.size);
    });
  }
  r.within("full check under 60 s", 60, since(t0));
}

// -- rsuv -------------------------------------------------------------------

inline void count_via_mul_suite(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto& counts = r.property("count_via_mul matches popcount of every prefix");
  auto& through = r.property("each count uses exactly one multiplication");
  for (int t = 0; t < 1000; ++t) {
    const BitSet x = random_bitset(rng, 1024);
    Nat sums = 0;
    tc0alg::CountingArray arr;
    {
      tc0alg::ObserveSums guard([&](const tc0alg::SumPlan&) { ++sums; });
      arr = rsuv::count_via_mul(encode_num(x));
    }
    bool ok = arr.table.row_count() == x.length() + 1;
    Nat running = 0;
    for (Nat z = 0; ok && z <= x.length(); ++z) {
      ok = arr.value_at(z) == running;
      if (x(z)) ++running;
    }
    counts.record(ok, [&] { return show(x); });
    if (!x.empty()) through.record(sums == 1, [&] { return show(x) + " used " + std::to_string(sums); });
  }
}

inline void delta_ops(SuiteReport& r, Rng&) {
  using namespace rsuv;
  auto& unary = r.property("len, half, mod2, S match bignum definitions");
  auto& binary = r.property("+, *, monus, #, MSP, BIT match bignum definitions");
  const DeltaPtr vx = delta::var("x"), vy = delta::var("y");
  const DeltaPtr len = delta::len(vx), half = delta::half(vx), mod2 = delta::mod2(vx), succ = delta::succ(vx);
  const DeltaPtr add = delta::add(vx, vy), mul = delta::mul(vx, vy), monus = delta::monus(vx, vy),
                 smash = delta::smash(vx, vy), msp = delta::msp(vx, vy), bit = delta::bit(vy, vx);
  for (Nat x = 0; x < 256; ++x) {
    const Big bx = x;
    const DeltaEnv one{{"x", bx}};
    unary.record(eval_delta(len, one) == bin_len_oracle(bx) && eval_delta(half, one) == bx / 2 &&
                     eval_delta(mod2, one) == bx % 2 && eval_delta(succ, one) == bx + 1,
                 [&] { return "x=" + std::to_string(x); });
    for (Nat y = 0; y < 256; ++y) {
      const Big by = y;
      const DeltaEnv env{{"x", bx}, {"y", by}};
      Big shifted = bx;
      for (Nat i = 0; i < y; ++i) shifted /= 2;
      binary.record(eval_delta(add, env) == bx + by && eval_delta(mul, env) == bx * by &&
                        eval_delta(monus, env) == (bx >= by ? Big(bx - by) : Big(0)) &&
                        eval_delta(smash, env) == pow2_oracle(bin_len_oracle(bx) * bin_len_oracle(by)) &&
                        eval_delta(msp, env) == shifted && eval_delta(bit, env) == shifted % 2,
                    [&] { return "x=" + std::to_string(x) + " y=" + std::to_string(y); });
    }
  }
}

inline void rsuv_roundtrip(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto& small = r.property("encode/decode inverse below 2^16");
  for (Nat v = 0; v < (Nat{1} << 16); ++v) {
    const BitSet s = decode_num(BigNat(v));
    small.record(encode_num(s) == v && big_value(s) == v, [&] { return std::to_string(v); });
  }
  auto& wide = r.property("encode/decode inverse on random 4096-bit values");
  for (int t = 0; t < 1000; ++t) {
    const BitSet s = random_bitset_exact(rng, 4096);
    const BigNat a = encode_num(s);
    wide.record(a == big_value(s) && decode_num(a) == s, [&] { return show(s); });
  }

  FormulaShape shape;
  shape.threshold = false;
  shape.modular = false;
  FormulaGenerator gen(rng, shape);
  auto& flat = r.property("flat preserves truth");
  auto& sharp = r.property("sharp(flat(phi)) = phi and evaluates alike");
  Nat supported = 0;
  for (int attempt = 0; supported < 500 && attempt < 5000; ++attempt) {
    const auto phi = gen.formula();
    rsuv::FlatResult fr;
    try {
      fr = rsuv::flat_translate(phi);
    } catch (const rsuv::UnsupportedFragment&) {
      continue;
    }
    ++supported;
    const auto back = rsuv::sharp_translate(fr.formula, rsuv::invert(fr.number_for));
    sharp.record(logic::equal(back, phi), [&] { return logic::to_string(phi) + " came back as " + logic::to_string(back); });
    for (int k = 0; k < 4; ++k) {
      const Assignment env = gen.assignment();
      const bool want = logic::eval_formula(phi, env, std_reg());
      const rsuv::DeltaEnv denv = rsuv::encode_env(env, fr.number_for);
      flat.record(rsuv::eval_delta(fr.formula, denv) == want, [&] { return logic::to_string(phi) + " at " + show(env); });
      sharp.record(logic::eval_formula(back, rsuv::decode_env(denv, rsuv::invert(fr.number_for)), std_reg()) == want,
                   [&] { return logic::to_string(back) + " at " + show(env); });
    }
  }
  r.property("500 supported formulas generated").record(supported == 500, [&] {
    return "only " + std::to_string(supported);
  });
}

// -- arithmetic combinatorics and subclasses -----------------------------------

inline void php(SuiteReport& r, Rng& rng) {
  auto& valid = r.property("collision is valid by direct lookup");
  for (int t = 0; t < 500; ++t) {
    const Nat a = 1 + rng.below(200);
    Table2D x;
    for (Nat z = 0; z <= a; ++z) {
      x.set(rng.below(a), z);
      if (rng.chance(1, 5)) x.set(rng.below(a), z);
    }
    const auto c = tc0alg::php_collision(a, x);
    valid.record(c.hole < a && c.earlier < c.later && c.later <= a && x(c.hole, c.later) && x(c.hole, c.earlier),
                 [&] { return "a=" + std::to_string(a) + " map " + to_table_string(x); });
  }
  auto& la = r.property("(a) union count <= sum of counts");
  auto& lb = r.property("(b) total count grows by the next row");
  auto& lc = r.property("(c) finite-union count <= total count");
  auto& ld = r.property("(d) total count <= rows * max row count");
  for (int t = 0; t < 500; ++t) {
    const Nat a = rng.below(12), b = rng.below(24);
    const Table2D z = random_table(rng, a + 1, b + 3);
    const BitSet x = random_bitset(rng, b + 3), y = random_bitset(rng, b + 3);
    auto where = [&] { return "a=" + std::to_string(a) + " b=" + std::to_string(b) + " Z=" + to_table_string(z); };
    la.record(numones(b, tc0alg::bounded_union(b, x, y)) <= numones(b, x) + numones(b, y),
              [&] { return to_set_string(x) + " " + to_set_string(y); });
    lb.record(tc0alg::tot_numones(a + 1, b, z) == tc0alg::tot_numones(a, b, z) + numones(b, z.row(a)), where);
    lc.record(numones(b, tc0alg::finite_union(a, b, z)) <= tc0alg::tot_numones(a, b, z), where);
    Nat k = 0;
    for (Nat row = 0; row < a; ++row) k = std::max(k, numones(b, z.row(row)));
    ld.record(tc0alg::tot_numones(a, b, z) <= a * k, where);
  }
}

inline void gap(SuiteReport& r, Rng& rng) {
  auto& bfs = r.property("rows equal BFS balls");
  auto& mono = r.property("rows are monotone");
  auto& fixed = r.property("one more step changes nothing");
  auto& formula = r.property("reachability formula holds");
  for (int t = 0; t < 1000; ++t) {
    const Nat a = rng.below(51);
    const auto g = random_digraph(rng, a, 1, 2 + 2 * rng.below(a + 1));
    const Table2D z = subp::gap_array(g);
    const auto balls = bfs_balls(a, g.edges, a + 1);
    auto where = [&] { return subp::to_text(g); };
    bool same = true, up = true;
    for (Nat k = 0; k < a; ++k) {
      same = same && z.row(k) == balls[k];
      if (k + 1 < a) up = up && (z.row(k) & z.row(k + 1)) == z.row(k);
    }
    bfs.record(same, where);
    mono.record(up, where);
    if (a > 0) {
      BitSet next = z.row(a - 1);
      for (Nat j = 0; j < a; ++j)
        if (z(a - 1, j)) next = next | (g.edges.row(j).prefix(a));
      fixed.record(next == z.row(a - 1), where);
    }
    formula.record(subp::check_reach_array(g, z), where);
  }
}

inline void nck_rec(SuiteReport& r, Rng& rng) {
  using namespace suite_detail;
  auto& nck = r.property("layered evaluation matches recursive evaluation");
  for (int t = 0; t < 300; ++t) {
    const Nat k = 1 + rng.below(3);
    Nat a = 2 + rng.below(15);
    while (subp::nck_depth(a, k) > 20) --a;
    const auto c = random_layered(rng, a, k);
    const BitSet x = random_bitset(rng, a + 3);
    const Table2D z = subp::nck_eval(c, x);
    bool ok = true;
    for (Nat d = 0; ok && d <= c.layers.size(); ++d)
      for (Nat g = 0; ok && g <= a; ++g) ok = z(d, g) == eval_gate_recursive(c, x, d, g);
    nck.record(ok, [&] { return subp::to_json(c).dump() + " X=" + to_set_string(x); });
  }

  const std::vector<subp::RecursionSpec> specs{
      subp::RecursionSpec::parse("X(z)", "E w < z : (w + 1 = z & Y(w))", "x + n + 1"),
      subp::RecursionSpec::parse("X(z)", "(Y(z) & !X(z)) | (E w < z : (w + 1 = z & Y(w) & X(w)))", "n + x + 1"),
      subp::RecursionSpec::parse("!X(z)", "Y(z) | X(z + x)", "n"),
      subp::RecursionSpec::parse("X(z) & X(z + 1)", "Mod[2] w < z + 1 : Y(w)", "2 * n + 1"),
  };
  auto& slices = r.property("multi-run slices equal single-run traces");
  auto& accept = r.property("validator accepts multi-run output");
  auto& reject = r.property("validator rejects single-bit mutations");
  for (int t = 0; t < 40; ++t) {
    const auto& spec = specs[t % specs.size()];
    const Nat a = 1 + rng.below(5), b = rng.below(5);
    const Table2D inputs = random_table(rng, b, 10);
    const Table2D y = subp::rec_eval_multi(spec, a, b, inputs);
    auto where = [&] { return "spec " + std::to_string(t % specs.size()) + " a=" + std::to_string(a) + " X=" + to_table_string(inputs); };
    bool same = true;
    for (Nat row = 0; row < b; ++row) {
      BitSet cur = spec.init(inputs.row(row));
      same = same && y.row(pair(row, 0)) == cur;
      for (Nat x = 0; x < a; ++x) {
        cur = spec.next(x, inputs.row(row), cur);
        same = same && y.row(pair(row, x + 1)) == cur && cur == subp::rec_eval(spec, x + 1, inputs.row(row));
      }
    }
    slices.record(same, where);
    accept.record(subp::check_recursion_table(spec, a, b, inputs, y), where);
    for (int m = 0; m < 100; ++m) {
      const Nat row = pair(rng.below(b + 1), rng.below(a + 2)), z = rng.below(a + 2 * 10 + 4);
      Table2D bad = y;
      bad.assign(row, z, !y(row, z));
      reject.record(!subp::check_recursion_table(spec, a, b, inputs, bad), [&] {
        return where() + " flip (" + std::to_string(row) + "," + std::to_string(z) + ")";
      });
    }
  }
}

// -- registry -----------------------------------------------------------------

struct SuiteInfo {
  std::string id;
  std::string title;
  void (*run)(SuiteReport&, Rng&);
};

inline const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all{
      {"mul-oracle", "multiplication matches the bignum product", mul_oracle},
      {"mul-laws", "commutativity, distributivity, associativity", mul_laws},
      {"row-append", "row-append law for iterated sums", row_append},
      {"perm-count", "counting is invariant under permutation", perm_count},
      {"block-bounds", "block-sum bounds on every sum during the multiplication suites", block_bounds},
      {"counting-arrays", "counting arrays accepted, mutations rejected", counting_arrays},
      {"quantifiers", "threshold and modular quantifier semantics", quantifiers},
      {"elimination", "threshold lowering and counting elimination", elimination},
      {"circuit-diff", "compiled circuits match the evaluator", circuit_diff},
      {"mul-depth", "multiplier depth constant, size within n^3 envelope", mul_depth},
      {"count-via-mul", "prefix counts read off one product", count_via_mul_suite},
      {"delta-ops", "number-sort operators match bignum definitions", delta_ops},
      {"php", "pigeonhole collisions and counting inequalities", php},
      {"gap", "reachability arrays match BFS", gap},
      {"nck-rec", "layered circuits and bounded recursion", nck_rec},
      {"rsuv-roundtrip", "set/number encoding and flat/sharp translation", rsuv_roundtrip},
  };
  return all;
}

inline const SuiteInfo* find_suite(const std::string& id) {
  for (const auto& s : suites())
    if (s.id == id) return &s;
  return nullptr;
}

// Failures inside a suite are recorded rather than propagated.
inline SuiteReport run_suite(const SuiteInfo& info, Nat seed) {
  SuiteReport r;
  r.id = info.id;
  r.title = info.title;
  r.seed = seed;
  Rng rng(seed);
  const auto t0 = suite_detail::Clock::now();
  try {
    info.run(r, rng);
  } catch (const std::exception& e) {
    r.property("no unexpected errors").record(false, [&] { return std::string(e.what()); });
  }
  r.seconds = suite_detail::since(t0);
  return r;
}

inline std::string to_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite " << r.id << " (seed " << r.seed << "): " << (r.passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& p : r.properties) {
    out << "  " << (p.passed() ? "ok  " : "FAIL") << " " << p.name << ": " << p.trials << " trials, " << p.failures
        << " failures\n";
    if (!p.counterexample.empty()) out << "       counterexample: " << p.counterexample << "\n";
  }
  for (const auto& n : r.notes) out << "  note " << n << "\n";
  return out.str();
}

inline nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : r.properties) {
    nlohmann::json j{{"name", p.name}, {"trials", p.trials}, {"failures", p.failures}, {"passed", p.passed()}};
    if (!p.counterexample.empty()) j["counterexample"] = p.counterexample;
    props.push_back(j);
  }
  return {{"suite", r.id}, {"seed", r.seed}, {"passed", r.passed()}, {"properties", props}, {"notes", r.notes}};
}

}  // namespace tcforge::verify
