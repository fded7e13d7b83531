#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tcforge/kernel/pairing.hpp"
#include "tcforge/kernel/table2d.hpp"
#include "tcforge/logic/eval.hpp"
#include "tcforge/logic/parser.hpp"
#include "tcforge/logic/registry.hpp"
#include "tcforge/logic/syntax.hpp"

namespace tcforge::subp {

// Bounded recursion on strings:
//   F(0, X)(z)     <-> z < t(0, |X|)     & init(z, X)
//   F(x + 1, X)(z) <-> z < t(x + 1, |X|) & next(z, x, X, F(x, X))
// `init` may mention z and X, `next` z, x, X and Y (the previous value), and
// the bound t the numbers x and n (= |X|).
class RecursionSpec {
 public:
  RecursionSpec(logic::FormulaPtr init, logic::FormulaPtr next, logic::TermPtr bound,
                const logic::FunctionRegistry& reg = standard_registry())
      : init_(std::move(init)), next_(std::move(next)), bound_(std::move(bound)), reg_(&reg) {
    require_vars(logic::free_vars(init_), {"z"}, {"X"}, "init");
    require_vars(logic::free_vars(next_), {"z", "x"}, {"X", "Y"}, "next");
    logic::VarSets bv;
    logic::free_vars_into(bound_, bv);
    require_vars(bv, {"x", "n"}, {}, "bound");
    check_monotone();
  }

  static RecursionSpec parse(std::string_view init, std::string_view next, std::string_view bound) {
    const auto& reg = standard_registry();
    return RecursionSpec(logic::parse_formula(init, reg), logic::parse_formula(next, reg),
                         logic::parse_term(bound, reg), reg);
  }

  Nat bound(Nat x, Nat n) const {
    Assignment env;
    env.bind("x", x).bind("n", n);
    return logic::eval_term(bound_, env, *reg_);
  }

  BitSet init(const BitSet& input) const {
    const Nat t = bound(0, input.length());
    Assignment env;
    env.bind("X", input);
    BitSet out;
    for (Nat z = 0; z < t; ++z)
      if (init_bit(env, z)) out.insert(z);
    return out;
  }

  BitSet next(Nat x, const BitSet& input, const BitSet& prev) const {
    const Nat t = bound(x + 1, input.length());
    Assignment env;
    env.bind("X", input).bind("Y", prev).bind("x", x);
    BitSet out;
    for (Nat z = 0; z < t; ++z)
      if (next_bit(env, z)) out.insert(z);
    return out;
  }

  // Untruncated bit predicates, for the validator.
  bool init_bit(Assignment& env, Nat z) const {
    env.bind("z", z);
    return logic::eval_formula(init_, env, *reg_);
  }
  bool next_bit(Assignment& env, Nat z) const {
    env.bind("z", z);
    return logic::eval_formula(next_, env, *reg_);
  }

  const logic::FormulaPtr& init_formula() const { return init_; }
  const logic::FormulaPtr& next_formula() const { return next_; }
  const logic::TermPtr& bound_term() const { return bound_; }

  static const logic::FunctionRegistry& standard_registry() {
    static const logic::FunctionRegistry reg = logic::FunctionRegistry::standard();
    return reg;
  }

 private:
  static void require_vars(const logic::VarSets& fv, std::initializer_list<const char*> nums,
                           std::initializer_list<const char*> strs, const std::string& what) {
    for (const auto& v : fv.nums)
      if (std::none_of(nums.begin(), nums.end(), [&](const char* n) { return v == n; }))
        throw DomainError(what + " mentions unexpected number variable '" + v + "'");
    for (const auto& v : fv.strs)
      if (std::none_of(strs.begin(), strs.end(), [&](const char* n) { return v == n; }))
        throw DomainError(what + " mentions unexpected string variable '" + v + "'");
  }

  // Sampled on 0..8 in each argument.
  void check_monotone() const {
    for (Nat x = 0; x <= 8; ++x)
      for (Nat n = 0; n <= 8; ++n) {
        const Nat here = bound(x, n);
        if ((x < 8 && bound(x + 1, n) < here) || (n < 8 && bound(x, n + 1) < here))
          throw DomainError("recursion bound is not monotone at x=" + std::to_string(x) + ", n=" + std::to_string(n));
      }
  }

  logic::FormulaPtr init_, next_;
  logic::TermPtr bound_;
  const logic::FunctionRegistry* reg_;
};

// F(0, X), ..., F(steps, X).
inline std::vector<BitSet> rec_trace(const RecursionSpec& spec, Nat steps, const BitSet& input) {
  std::vector<BitSet> out{spec.init(input)};
  for (Nat x = 0; x < steps; ++x) out.push_back(spec.next(x, input, out.back()));
  return out;
}

inline BitSet rec_eval(const RecursionSpec& spec, Nat x, const BitSet& input) {
  return rec_trace(spec, x, input).back();
}

// Row <y, x> of the result is F(x, X^{[y]}) for y < b and x <= a.
inline Table2D rec_eval_multi(const RecursionSpec& spec, Nat a, Nat b, const Table2D& inputs) {
  Table2D out;
  for (Nat y = 0; y < b; ++y) {
    const auto trace = rec_trace(spec, a, inputs.row(y));
    for (Nat x = 0; x <= a; ++x) out.set_row(pair(y, x), trace[x]);
  }
  return out;
}

// The simultaneous-recursion formula, clause by clause. Each biconditional is
// checked for every z where either side can hold, and no row of `trace` may
// lie outside the slices <y, x>, y < b, x <= a.
inline bool check_recursion_table(const RecursionSpec& spec, Nat a, Nat b, const Table2D& inputs, const Table2D& trace) {
  for (Nat r = 0; r < trace.row_count(); ++r) {
    if (trace.row(r).empty()) continue;
    const auto [y, x] = unpair(r);
    if (y >= b || x > a) return false;
  }
  for (Nat y = 0; y < b; ++y) {
    const BitSet& input = inputs.row(y);
    Assignment env;
    env.bind("X", input);
    const BitSet& first = trace.row(pair(y, 0));
    const Nat t0 = spec.bound(0, input.length());
    for (Nat z = 0; z < std::max({a, t0, first.length()}); ++z)
      if (first(z) != (z < t0 && spec.init_bit(env, z))) return false;
    for (Nat x = 0; x < a; ++x) {
      const BitSet& cur = trace.row(pair(y, x + 1));
      const Nat t = spec.bound(x + 1, input.length());
      env.bind("x", x).bind("Y", trace.row(pair(y, x)));
      for (Nat z = 0; z < std::max({a, t, cur.length()}); ++z)
        if (cur(z) != (z < t && spec.next_bit(env, z))) return false;
    }
  }
  return true;
}

}  // namespace tcforge::subp
