#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tcforge/kernel/assignment.hpp"
#include "tcforge/logic/ast.hpp"

// Test-only oracle: evaluates a formula by materializing, bottom-up, the
// full truth table of every subformula over all tuples of its free number
// variables in [0, range). Shares nothing with logic::Evaluator except the
// AST. Supports base terms, numones over string variables, number
// quantifiers, Th and Mod.
namespace tcforge::verify {

class TableOracle {
 public:
  TableOracle(const Assignment& env, Nat range) : env_(env), range_(range) {}

  bool eval(const logic::FormulaPtr& f) {
    Rel r = build(f);
    std::vector<Nat> tuple;
    for (const auto& v : r.vars) tuple.push_back(env_.num(v));
    for (Nat x : tuple)
      if (x >= range_) throw DomainError("oracle range too small");
    return r.cells[index(tuple)];
  }

 private:
  using K = logic::Formula::Kind;
  using TK = logic::NumTerm::Kind;

  struct Rel {
    std::vector<std::string> vars;  // sorted
    std::vector<char> cells;
  };

  Nat index(const std::vector<Nat>& tuple) const {
    Nat i = 0;
    for (Nat x : tuple) i = i * range_ + x;
    return i;
  }

  Nat size(std::size_t arity) const {
    Nat n = 1;
    for (std::size_t k = 0; k < arity; ++k) n *= range_;
    return n;
  }

  std::vector<Nat> decode(Nat i, std::size_t arity) const {
    std::vector<Nat> t(arity);
    for (std::size_t k = arity; k-- > 0;) {
      t[k] = i % range_;
      i /= range_;
    }
    return t;
  }

  static void term_vars(const logic::TermPtr& t, std::vector<std::string>& out) {
    if (!t) return;
    if (t->kind == TK::Var) out.push_back(t->name);
    term_vars(t->lhs, out);
    term_vars(t->rhs, out);
    for (const auto& a : t->num_args) term_vars(a, out);
  }

  static std::vector<std::string> merged(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  Nat term(const logic::TermPtr& t, const std::map<std::string, Nat>& at) const {
    switch (t->kind) {
      case TK::Lit: return t->value;
      case TK::Var: {
        auto it = at.find(t->name);
        return it != at.end() ? it->second : env_.num(t->name);
      }
      case TK::Add: return term(t->lhs, at) + term(t->rhs, at);
      case TK::Mul: return term(t->lhs, at) * term(t->rhs, at);
      case TK::Len: return length_of(env_.str(t->str->name));
      case TK::App: {
        if (t->name != "numones") throw DomainError("oracle supports numones only");
        const Nat z = term(t->num_args[0], at);
        const BitSet& s = env_.str(t->str_args[0]->name);
        Nat c = 0;
        for (Nat i = 0; i < z && i < length_of(s); ++i) c += s(i) ? 1 : 0;
        return c;
      }
    }
    return 0;
  }

  static Nat length_of(const BitSet& s) {
    Nat top = 0;
    s.for_each([&](Nat i) { top = i + 1; });
    return top;
  }

  template <typename Cell>
  Rel tabulate(std::vector<std::string> vars, Cell cell) const {
    Rel r{std::move(vars), {}};
    const Nat n = size(r.vars.size());
    r.cells.resize(n);
    for (Nat i = 0; i < n; ++i) {
      std::vector<Nat> tuple = decode(i, r.vars.size());
      std::map<std::string, Nat> at;
      for (std::size_t k = 0; k < tuple.size(); ++k) at[r.vars[k]] = tuple[k];
      r.cells[i] = cell(at) ? 1 : 0;
    }
    return r;
  }

  // Looks up `r` at the values given by `at` (a superset of r.vars).
  bool lookup(const Rel& r, const std::map<std::string, Nat>& at) const {
    std::vector<Nat> tuple;
    for (const auto& v : r.vars) {
      auto it = at.find(v);
      tuple.push_back(it != at.end() ? it->second : env_.num(v));
    }
    for (Nat x : tuple)
      if (x >= range_) throw DomainError("oracle range too small");
    return r.cells[index(tuple)];
  }

  Rel build(const logic::FormulaPtr& f) {
    switch (f->kind) {
      case K::True: return Rel{{}, {1}};
      case K::False: return Rel{{}, {0}};
      case K::Eq:
      case K::Leq:
      case K::In: {
        std::vector<std::string> vs;
        term_vars(f->lhs, vs);
        term_vars(f->rhs, vs);
        return tabulate(merged(vs), [&](const std::map<std::string, Nat>& at) {
          const Nat l = term(f->lhs, at);
          if (f->kind == K::In) return env_.str(f->set->name)(l);
          const Nat r = term(f->rhs, at);
          return f->kind == K::Eq ? l == r : l <= r;
        });
      }
      case K::StrEq: return Rel{{}, {env_.str(f->set->name) == env_.str(f->set2->name) ? char(1) : char(0)}};
      case K::Not: {
        Rel r = build(f->a);
        for (auto& c : r.cells) c = !c;
        return r;
      }
      case K::And:
      case K::Or: {
        Rel a = build(f->a), b = build(f->b);
        std::vector<std::string> vs = a.vars;
        vs.insert(vs.end(), b.vars.begin(), b.vars.end());
        const bool conj = f->kind == K::And;
        return tabulate(merged(vs), [&](const std::map<std::string, Nat>& at) {
          return conj ? (lookup(a, at) && lookup(b, at)) : (lookup(a, at) || lookup(b, at));
        });
      }
      case K::ExistsNum:
      case K::ForallNum:
      case K::Thq:
      case K::Modm: {
        Rel body = build(f->a);
        std::vector<std::string> vs;
        for (const auto& v : body.vars)
          if (v != f->var) vs.push_back(v);
        term_vars(f->bound, vs);
        if (f->count) term_vars(f->count, vs);
        return tabulate(merged(vs), [&](const std::map<std::string, Nat>& at) {
          const Nat t = term(f->bound, at);
          if (t > range_) throw DomainError("oracle range too small for bound");
          std::map<std::string, Nat> inner = at;
          Nat hits = 0;
          for (Nat z = 0; z < t; ++z) {
            inner[f->var] = z;
            hits += lookup(body, inner) ? 1 : 0;
          }
          switch (f->kind) {
            case K::ExistsNum: return hits > 0;
            case K::ForallNum: return hits == t;
            case K::Thq: return hits >= term(f->count, at);
            default: return hits % f->modulus == 1;
          }
        });
      }
      default: throw DomainError("oracle does not enumerate string quantifiers");
    }
  }

  const Assignment& env_;
  Nat range_;
};

inline bool oracle_eval(const logic::FormulaPtr& f, const Assignment& env, Nat range) {
  return TableOracle(env, range).eval(f);
}

}  // namespace tcforge::verify
