#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcforge/circuits/circuit.hpp"
#include "tcforge/logic/classify.hpp"
#include "tcforge/logic/registry.hpp"

namespace tcforge::circuits {

namespace compile_detail {

using namespace logic;

// A number known to lie in [0, ge.size() - 1], as a thermometer code:
// ge[v] holds iff the value is at least v (ge[0] is constant true).
struct NumWires {
  std::vector<GateId> ge;
  Nat max() const { return ge.size() - 1; }
};

// Bit p of a string whose length is at most bits.size().
struct StrWires {
  std::vector<GateId> bits;
};

struct Env {
  std::map<std::string, NumWires> nums;
  std::map<std::string, StrWires> strs;
};

class FormulaCompiler {
 public:
  // Thermometer codes longer than this are refused.
  static constexpr Nat kMaxRange = Nat{1} << 14;

  FormulaCompiler(CircuitBuilder& b, const FunctionRegistry& reg, bool counting)
      : b_(b), reg_(reg), counting_(counting) {}

  GateId formula(const FormulaPtr& f, Env& env) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::True: return b_.truth();
      case K::False: return b_.falsity();
      case K::Eq: {
        NumWires l = term(f->lhs, env), r = term(f->rhs, env);
        std::vector<GateId> any;
        for (Nat v = 0; v <= std::min(l.max(), r.max()); ++v) any.push_back(b_.and_(exactly(l, v), exactly(r, v)));
        return b_.or_(any);
      }
      case K::Leq: {
        NumWires l = term(f->lhs, env), r = term(f->rhs, env);
        std::vector<GateId> any;
        for (Nat v = 0; v <= l.max(); ++v) any.push_back(b_.and_(exactly(l, v), at_least(r, v)));
        return b_.or_(any);
      }
      case K::StrEq: {
        StrWires l = str(f->set, env), r = str(f->set2, env);
        std::vector<GateId> all;
        for (Nat i = 0; i < std::max(l.bits.size(), r.bits.size()); ++i) all.push_back(b_.iff(bit(l, i), bit(r, i)));
        return b_.and_(all);
      }
      case K::In: return member(term(f->lhs, env), f->set, env);
      case K::Not: return b_.not_(formula(f->a, env));
      case K::And: return b_.and_(formula(f->a, env), formula(f->b, env));
      case K::Or: return b_.or_(formula(f->a, env), formula(f->b, env));
      case K::ExistsNum:
      case K::ForallNum: {
        const bool exists = f->kind == K::ExistsNum;
        NumWires t = term(f->bound, env);
        std::vector<GateId> parts;
        for (Nat c = 0; c < t.max(); ++c) {
          const GateId in_range = at_least(t, c + 1);
          const GateId body = with_number(env, f->var, c, [&] { return formula(f->a, env); });
          parts.push_back(exists ? b_.and_(in_range, body) : b_.or_(b_.not_(in_range), body));
        }
        return exists ? b_.or_(parts) : b_.and_(parts);
      }
      case K::ExistsStr:
      case K::ForallStr: throw DomainError("string quantifiers cannot be compiled to a circuit");
      case K::Thq:
      case K::Modm: {
        if (!counting_) throw DomainError("counting quantifier needs the threshold compiler");
        NumWires t = term(f->bound, env);
        std::vector<GateId> hits;
        for (Nat c = 0; c < t.max(); ++c) {
          const GateId body = with_number(env, f->var, c, [&] { return formula(f->a, env); });
          hits.push_back(b_.and_(at_least(t, c + 1), body));
        }
        std::vector<GateId> any;
        if (f->kind == K::Thq) {
          NumWires s = term(f->count, env);
          for (Nat v = 0; v <= s.max(); ++v) any.push_back(b_.and_(exactly(s, v), b_.threshold(v, hits)));
        } else {
          if (f->modulus == 0) throw DomainError("modulus must be positive");
          for (Nat c = 1 % f->modulus; c <= hits.size(); c += f->modulus)
            any.push_back(b_.and_(b_.threshold(c, hits), b_.not_(b_.threshold(c + 1, hits))));
        }
        return b_.or_(any);
      }
    }
    throw DomainError("unknown formula node");
  }

  NumWires term(const TermPtr& t, Env& env) {
    using K = NumTerm::Kind;
    switch (t->kind) {
      case K::Lit: return constant(t->value);
      case K::Var: {
        if (auto it = env.nums.find(t->name); it != env.nums.end()) return it->second;
        const InputDecl* d = find_input(b_.layout(), t->name);
        if (!d || d->kind != InputKind::Unary) throw DomainError("number variable '" + t->name + "' missing from the input layout");
        NumWires w;
        w.ge.push_back(b_.truth());
        for (Nat v = 1; v <= d->width; ++v) w.ge.push_back(b_.input(t->name, v - 1));
        return env.nums[t->name] = w;
      }
      case K::Add: {
        NumWires l = term(t->lhs, env), r = term(t->rhs, env);
        const Nat top = checked_add(l.max(), r.max());
        check_range(top);
        NumWires w{{b_.truth()}};
        for (Nat v = 1; v <= top; ++v) {
          std::vector<GateId> any;
          for (Nat a = 0; a <= std::min(v, l.max()); ++a)
            if (v - a <= r.max()) any.push_back(b_.and_(at_least(l, a), at_least(r, v - a)));
          w.ge.push_back(b_.or_(any));
        }
        return w;
      }
      case K::Mul: {
        NumWires l = term(t->lhs, env), r = term(t->rhs, env);
        const Nat top = checked_mul(l.max(), r.max());
        check_range(top);
        NumWires w{{b_.truth()}};
        for (Nat v = 1; v <= top; ++v) {
          std::vector<GateId> any;
          for (Nat a = 1; a <= l.max(); ++a) {
            const Nat need = ceil_div(v, a);
            if (need <= r.max()) any.push_back(b_.and_(at_least(l, a), at_least(r, need)));
          }
          w.ge.push_back(b_.or_(any));
        }
        return w;
      }
      case K::Len: {
        StrWires s = str(t->str, env);
        NumWires w{{b_.truth()}};
        for (Nat v = 1; v <= s.bits.size(); ++v)
          w.ge.push_back(b_.or_(std::vector<GateId>(s.bits.begin() + static_cast<std::ptrdiff_t>(v - 1), s.bits.end())));
        return w;
      }
      case K::App: return apply_number(*t, env);
    }
    throw DomainError("unknown term node");
  }

  StrWires str(const StrPtr& s, Env& env) {
    if (s->kind == StrTerm::Kind::Var) {
      if (auto it = env.strs.find(s->name); it != env.strs.end()) return it->second;
      const InputDecl* d = find_input(b_.layout(), s->name);
      if (!d || d->kind != InputKind::String) throw DomainError("string variable '" + s->name + "' missing from the input layout");
      StrWires w;
      for (Nat i = 0; i < d->width; ++i) w.bits.push_back(b_.input(s->name, i));
      return env.strs[s->name] = w;
    }
    const FunctionDef& d = reg_.at(s->name);
    if (!d.body) throw DomainError("symbol '" + d.name + "' has no bit-definition to compile");
    Env inner = bind_params(d, s->num_args, s->str_args, env);
    NumWires bound = term(d.bound, inner);
    StrWires w;
    for (Nat p = 0; p < bound.max(); ++p) {
      const GateId body = with_number(inner, d.var, p, [&] { return formula(d.body, inner); });
      w.bits.push_back(b_.and_(at_least(bound, p + 1), body));
    }
    return w;
  }

  GateId at_least(const NumWires& w, Nat v) { return v < w.ge.size() ? w.ge[v] : b_.falsity(); }
  GateId exactly(const NumWires& w, Nat v) { return b_.and_(at_least(w, v), b_.not_(at_least(w, v + 1))); }
  GateId bit(const StrWires& s, Nat i) { return i < s.bits.size() ? s.bits[i] : b_.falsity(); }

 private:
  static void check_range(Nat top) {
    if (top >= kMaxRange) throw DomainError("term range " + std::to_string(top) + " too large to compile");
  }

  NumWires constant(Nat c) {
    check_range(c);
    return NumWires{std::vector<GateId>(c + 1, b_.truth())};
  }

  template <typename F>
  GateId with_number(Env& env, const std::string& name, Nat value, F&& body) {
    auto saved = env.nums.find(name);
    std::optional<NumWires> old;
    if (saved != env.nums.end()) old = saved->second;
    env.nums[name] = constant(value);
    const GateId g = body();
    if (old) env.nums[name] = *old;
    else env.nums.erase(name);
    return g;
  }

  Env bind_params(const FunctionDef& d, const std::vector<TermPtr>& nums, const std::vector<StrPtr>& strs, Env& env) {
    Env inner;
    for (std::size_t i = 0; i < d.num_params.size(); ++i) inner.nums[d.num_params[i]] = term(nums.at(i), env);
    for (std::size_t i = 0; i < d.str_params.size(); ++i) inner.strs[d.str_params[i]] = str(strs.at(i), env);
    return inner;
  }

  GateId member(const NumWires& index, const StrPtr& s, Env& env) {
    StrWires w = str(s, env);
    std::vector<GateId> any;
    for (Nat v = 0; v <= std::min<Nat>(index.max(), w.bits.size()); ++v)
      any.push_back(b_.and_(exactly(index, v), bit(w, v)));
    return b_.or_(any);
  }

  NumWires apply_number(const NumTerm& t, Env& env) {
    const FunctionDef& d = reg_.at(t.name);
    if (d.primitive_count()) {
      if (!counting_) throw DomainError("numones needs the threshold compiler");
      NumWires bound = term(t.num_args.at(0), env);
      StrWires s = str(t.str_args.at(0), env);
      // numones(t, S) >= c  <->  OR_v (t = v & at least c of S(0..v-1))
      NumWires w{{b_.truth()}};
      const Nat top = std::min<Nat>(bound.max(), s.bits.size());
      for (Nat c = 1; c <= top; ++c) {
        std::vector<GateId> any;
        for (Nat v = c; v <= bound.max(); ++v) {
          std::vector<GateId> prefix(s.bits.begin(), s.bits.begin() + static_cast<std::ptrdiff_t>(std::min<Nat>(v, s.bits.size())));
          any.push_back(b_.and_(exactly(bound, v), b_.threshold(c, std::move(prefix))));
        }
        w.ge.push_back(b_.or_(any));
      }
      return w;
    }
    if (!d.body) throw DomainError("symbol '" + d.name + "' has no definition to compile");
    // Graph definition: value y is the unique y <= bound with body(y).
    Env inner = bind_params(d, t.num_args, t.str_args, env);
    NumWires bound = term(d.bound, inner);
    std::vector<GateId> is_value;
    for (Nat y = 0; y <= bound.max(); ++y) {
      const GateId body = with_number(inner, d.var, y, [&] { return formula(d.body, inner); });
      is_value.push_back(b_.and_(at_least(bound, y), body));
    }
    NumWires w{{b_.truth()}};
    for (Nat v = 1; v <= bound.max(); ++v)
      w.ge.push_back(b_.or_(std::vector<GateId>(is_value.begin() + static_cast<std::ptrdiff_t>(v), is_value.end())));
    return w;
  }

  CircuitBuilder& b_;
  const FunctionRegistry& reg_;
  bool counting_;
};

inline void check_layout(const logic::FormulaPtr& phi, const InputLayout& layout) {
  logic::VarSets fv = logic::free_vars(phi);
  for (const auto& v : fv.nums) {
    const InputDecl* d = find_input(layout, v);
    if (!d) throw DomainError("free variable '" + v + "' missing from the input layout");
    if (d->kind != InputKind::Unary) throw DomainError("'" + v + "' is a number but the layout declares a string");
  }
  for (const auto& v : fv.strs) {
    const InputDecl* d = find_input(layout, v);
    if (!d) throw DomainError("free variable '" + v + "' missing from the input layout");
    if (d->kind != InputKind::String) throw DomainError("'" + v + "' is a string but the layout declares a number");
  }
}

inline Circuit compile(const logic::FormulaPtr& phi, const InputLayout& layout, const logic::FunctionRegistry& reg,
                       bool counting) {
  check_layout(phi, layout);
  CircuitBuilder b(layout);
  FormulaCompiler fc(b, reg, counting);
  Env env;
  const GateId out = fc.formula(phi, env);
  return b.build({out});
}

}  // namespace compile_detail

// Constant-depth AND/OR/NOT circuit for a SigB0 formula (no counting).
inline Circuit compile_sigma0(const logic::FormulaPtr& phi, const InputLayout& layout,
                              const logic::FunctionRegistry& reg = logic::FunctionRegistry::standard()) {
  if (logic::classify(phi) != logic::FormulaClass::SigB0)
    throw DomainError("compile_sigma0 needs a SigB0 formula, got " + std::string(logic::class_name(logic::classify(phi))));
  return compile_detail::compile(phi, layout, reg, false);
}

// Threshold circuit for a formula over the base language, numones, counting
// and modular quantifiers, and registered definitions.
inline Circuit compile_tc0(const logic::FormulaPtr& phi, const InputLayout& layout,
                           const logic::FunctionRegistry& reg = logic::FunctionRegistry::standard()) {
  logic::classify_detail::Census census;
  logic::classify_detail::census(phi, census);
  if (census.str_exists || census.str_forall)
    throw DomainError("compile_tc0 cannot compile string quantifiers");
  return compile_detail::compile(phi, layout, reg, true);
}

// Output p is bit p of the string function `name` applied to its parameters,
// which are read from the layout; one output per position below the bound.
inline Circuit compile_string_function(const std::string& name, const InputLayout& layout,
                                       const logic::FunctionRegistry& reg) {
  using namespace compile_detail;
  const logic::FunctionDef& d = reg.at(name);
  if (d.sort != logic::Sort::String || !d.body) throw DomainError("'" + name + "' is not a defined string function");
  std::vector<logic::TermPtr> nums;
  std::vector<logic::StrPtr> strs;
  for (const auto& p : d.num_params) nums.push_back(logic::ast::var(p));
  for (const auto& p : d.str_params) strs.push_back(logic::ast::svar(p));
  const logic::FormulaPtr probe = logic::ast::leq(logic::ast::len(logic::ast::sapp(name, nums, strs)), logic::ast::zero());
  check_layout(probe, layout);
  CircuitBuilder b(layout);
  FormulaCompiler fc(b, reg, true);
  Env env;
  StrWires bits = fc.str(logic::ast::sapp(name, nums, strs), env);
  if (bits.bits.empty()) bits.bits.push_back(b.falsity());
  return b.build(bits.bits);
}

}  // namespace tcforge::circuits
