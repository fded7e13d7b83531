#pragma once

#include <optional>

#include "tcforge/kernel/assignment.hpp"
#include "tcforge/logic/registry.hpp"

namespace tcforge::logic {

// Truth in the standard model. Number quantifiers run over their bound;
// string quantifiers enumerate every subset of [0, bound) and are limited to
// bound <= kMaxStringBound.
class Evaluator {
 public:
  static constexpr Nat kMaxStringBound = 20;

  explicit Evaluator(const FunctionRegistry& reg) : reg_(reg) {}

  bool eval(const FormulaPtr& f, const Assignment& env) const {
    Assignment local = env;
    return formula(f, local);
  }

  Nat eval(const TermPtr& t, const Assignment& env) const {
    Assignment local = env;
    return term(t, local);
  }

  BitSet eval(const StrPtr& s, const Assignment& env) const {
    Assignment local = env;
    return set(s, local);
  }

  Nat term(const TermPtr& t, Assignment& env) const {
    using K = NumTerm::Kind;
    switch (t->kind) {
      case K::Lit: return t->value;
      case K::Var: return env.num(t->name);
      case K::Add: return checked_add(term(t->lhs, env), term(t->rhs, env));
      case K::Mul: return checked_mul(term(t->lhs, env), term(t->rhs, env));
      case K::Len:
        if (t->str->kind == StrTerm::Kind::Var) return env.str(t->str->name).length();
        return set(t->str, env).length();
      case K::App: return apply_number(*t, env);
    }
    return 0;
  }

  BitSet set(const StrPtr& s, Assignment& env) const {
    if (s->kind == StrTerm::Kind::Var) return env.str(s->name);
    const FunctionDef& d = reg_.at(s->name);
    auto [nums, strs] = arguments(s->num_args, s->str_args, env);
    if (d.str_native) return d.str_native(nums, strs);
    Assignment inner = bind_params(d, nums, strs);
    const Nat t = term(d.bound, inner);
    BitSet out;
    for (Nat z = 0; z < t; ++z) {
      inner.bind(d.var, z);
      if (formula(d.body, inner)) out.insert(z);
    }
    return out;
  }

  // S(i) without materializing S when S is a defined function.
  bool member(Nat i, const StrPtr& s, Assignment& env) const {
    if (s->kind == StrTerm::Kind::Var) return env.str(s->name).contains(i);
    const FunctionDef& d = reg_.at(s->name);
    if (d.str_native || !d.body) return set(s, env).contains(i);
    auto [nums, strs] = arguments(s->num_args, s->str_args, env);
    Assignment inner = bind_params(d, nums, strs);
    if (i >= term(d.bound, inner)) return false;
    inner.bind(d.var, i);
    return formula(d.body, inner);
  }

  bool formula(const FormulaPtr& f, Assignment& env) const {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Eq: return term(f->lhs, env) == term(f->rhs, env);
      case K::Leq: return term(f->lhs, env) <= term(f->rhs, env);
      case K::StrEq: return set(f->set, env) == set(f->set2, env);
      case K::In: return member(term(f->lhs, env), f->set, env);
      case K::Not: return !formula(f->a, env);
      case K::And: return formula(f->a, env) && formula(f->b, env);
      case K::Or: return formula(f->a, env) || formula(f->b, env);
      case K::ExistsNum:
      case K::ForallNum: {
        const bool want = f->kind == K::ExistsNum;
        const Nat t = term(f->bound, env);
        NumBinding guard(env, f->var);
        for (Nat z = 0; z < t; ++z) {
          env.bind(f->var, z);
          if (formula(f->a, env) == want) return want;
        }
        return !want;
      }
      case K::ExistsStr:
      case K::ForallStr: {
        const bool want = f->kind == K::ExistsStr;
        const Nat t = term(f->bound, env);
        if (t > kMaxStringBound) throw DomainError("string quantifier bound " + std::to_string(t) + " too large to enumerate");
        StrBinding guard(env, f->var);
        for (Nat mask = 0; mask < (Nat{1} << t); ++mask) {
          env.bind(f->var, BitSet::from_words({mask}));
          if (formula(f->a, env) == want) return want;
        }
        return !want;
      }
      case K::Thq: {
        const Nat s = term(f->count, env);
        if (s == 0) return true;
        const Nat t = term(f->bound, env);
        NumBinding guard(env, f->var);
        Nat hits = 0;
        for (Nat z = 0; z < t; ++z) {
          env.bind(f->var, z);
          if (formula(f->a, env) && ++hits >= s) return true;
        }
        return false;
      }
      case K::Modm: {
        const Nat t = term(f->bound, env);
        NumBinding guard(env, f->var);
        Nat hits = 0;
        for (Nat z = 0; z < t; ++z) {
          env.bind(f->var, z);
          if (formula(f->a, env)) ++hits;
        }
        return hits % f->modulus == 1 % f->modulus;
      }
    }
    return false;
  }

 private:
  // Restores whatever the variable meant outside the binder.
  struct NumBinding {
    NumBinding(Assignment& env, std::string name) : env_(env), name_(std::move(name)) {
      if (env_.has_num(name_)) saved_ = env_.num(name_);
    }
    ~NumBinding() {
      if (saved_) env_.bind(name_, *saved_);
      else env_.unbind_num(name_);
    }
    Assignment& env_;
    std::string name_;
    std::optional<Nat> saved_;
  };
  struct StrBinding {
    StrBinding(Assignment& env, std::string name) : env_(env), name_(std::move(name)) {
      if (env_.has_str(name_)) saved_ = env_.str(name_);
    }
    ~StrBinding() {
      if (saved_) env_.bind(name_, *saved_);
      else env_.unbind_str(name_);
    }
    Assignment& env_;
    std::string name_;
    std::optional<BitSet> saved_;
  };

  std::pair<std::vector<Nat>, std::vector<BitSet>> arguments(const std::vector<TermPtr>& nt,
                                                             const std::vector<StrPtr>& st, Assignment& env) const {
    std::vector<Nat> nums;
    std::vector<BitSet> strs;
    for (const auto& a : nt) nums.push_back(term(a, env));
    for (const auto& a : st) strs.push_back(set(a, env));
    return {std::move(nums), std::move(strs)};
  }

  static Assignment bind_params(const FunctionDef& d, const std::vector<Nat>& nums, const std::vector<BitSet>& strs) {
    Assignment inner;
    for (std::size_t i = 0; i < d.num_params.size(); ++i) inner.bind(d.num_params[i], nums[i]);
    for (std::size_t i = 0; i < d.str_params.size(); ++i) inner.bind(d.str_params[i], strs[i]);
    return inner;
  }

  Nat apply_number(const NumTerm& t, Assignment& env) const {
    const FunctionDef& d = reg_.at(t.name);
    auto [nums, strs] = arguments(t.num_args, t.str_args, env);
    if (d.num_native) return d.num_native(nums, strs);
    // Graph definition: the unique y <= bound satisfying the body.
    Assignment inner = bind_params(d, nums, strs);
    const Nat b = term(d.bound, inner);
    for (Nat y = 0; y <= b; ++y) {
      inner.bind(d.var, y);
      if (formula(d.body, inner)) return y;
    }
    throw DomainError("graph of '" + d.name + "' has no value within its bound");
  }

  const FunctionRegistry& reg_;
};

inline bool eval_formula(const FormulaPtr& f, const Assignment& env, const FunctionRegistry& reg) {
  return Evaluator(reg).eval(f, env);
}

inline Nat eval_term(const TermPtr& t, const Assignment& env, const FunctionRegistry& reg) {
  return Evaluator(reg).eval(t, env);
}

}  // namespace tcforge::logic
