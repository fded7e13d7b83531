#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tcforge/core/nat.hpp"

namespace tcforge::logic {

struct NumTerm;
struct StrTerm;
struct Formula;
using TermPtr = std::shared_ptr<const NumTerm>;
using StrPtr = std::shared_ptr<const StrTerm>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct NumTerm {
  enum class Kind { Lit, Var, Add, Mul, Len, App };
  Kind kind = Kind::Lit;
  Nat value = 0;     // Lit
  std::string name;  // Var, App
  TermPtr lhs, rhs;  // Add, Mul
  StrPtr str;        // Len
  std::vector<TermPtr> num_args;
  std::vector<StrPtr> str_args;
};

struct StrTerm {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  std::string name;
  std::vector<TermPtr> num_args;
  std::vector<StrPtr> str_args;
};

struct Formula {
  enum class Kind {
    True,
    False,
    Eq,
    Leq,
    StrEq,
    In,
    Not,
    And,
    Or,
    ExistsNum,
    ForallNum,
    ExistsStr,
    ForallStr,
    Thq,
    Modm,
  };
  Kind kind = Kind::True;
  TermPtr lhs, rhs;    // Eq, Leq; In uses lhs as the index
  StrPtr set, set2;    // In uses set; StrEq uses both
  FormulaPtr a, b;     // Not: a; And/Or: a,b; quantifiers: body in a
  std::string var;     // bound variable
  TermPtr bound;       // number quantifiers: var < bound; string quantifiers: |var| <= bound
  TermPtr count;       // Thq threshold
  Nat modulus = 0;     // Modm
};

inline bool is_quantifier(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::ExistsNum || k == K::ForallNum || k == K::ExistsStr || k == K::ForallStr || k == K::Thq ||
         k == K::Modm;
}

inline bool is_atom(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::True || k == K::False || k == K::Eq || k == K::Leq || k == K::StrEq || k == K::In;
}

// Constructors.
namespace ast {

inline TermPtr lit(Nat v) {
  auto t = std::make_shared<NumTerm>();
  t->kind = NumTerm::Kind::Lit;
  t->value = v;
  return t;
}
inline TermPtr zero() { return lit(0); }
inline TermPtr one() { return lit(1); }

inline TermPtr var(std::string name) {
  auto t = std::make_shared<NumTerm>();
  t->kind = NumTerm::Kind::Var;
  t->name = std::move(name);
  return t;
}

inline TermPtr add(TermPtr l, TermPtr r) {
  auto t = std::make_shared<NumTerm>();
  t->kind = NumTerm::Kind::Add;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

inline TermPtr mul(TermPtr l, TermPtr r) {
  auto t = std::make_shared<NumTerm>();
  t->kind = NumTerm::Kind::Mul;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

inline TermPtr succ(TermPtr t) { return add(std::move(t), one()); }

inline TermPtr len(StrPtr s) {
  auto t = std::make_shared<NumTerm>();
  t->kind = NumTerm::Kind::Len;
  t->str = std::move(s);
  return t;
}

inline TermPtr app(std::string name, std::vector<TermPtr> nums, std::vector<StrPtr> strs) {
  auto t = std::make_shared<NumTerm>();
  t->kind = NumTerm::Kind::App;
  t->name = std::move(name);
  t->num_args = std::move(nums);
  t->str_args = std::move(strs);
  return t;
}

// The base-language term (x+y)(x+y+1) + 2y.
inline TermPtr pair(TermPtr x, TermPtr y) {
  TermPtr s = add(x, y);
  return add(mul(s, succ(s)), add(y, y));
}

inline StrPtr svar(std::string name) {
  auto s = std::make_shared<StrTerm>();
  s->kind = StrTerm::Kind::Var;
  s->name = std::move(name);
  return s;
}

inline StrPtr sapp(std::string name, std::vector<TermPtr> nums, std::vector<StrPtr> strs) {
  auto s = std::make_shared<StrTerm>();
  s->kind = StrTerm::Kind::App;
  s->name = std::move(name);
  s->num_args = std::move(nums);
  s->str_args = std::move(strs);
  return s;
}

inline FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

inline FormulaPtr truth(bool v) {
  Formula f;
  f.kind = v ? Formula::Kind::True : Formula::Kind::False;
  return make(std::move(f));
}

inline FormulaPtr eq(TermPtr l, TermPtr r) {
  Formula f;
  f.kind = Formula::Kind::Eq;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return make(std::move(f));
}

inline FormulaPtr leq(TermPtr l, TermPtr r) {
  Formula f;
  f.kind = Formula::Kind::Leq;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return make(std::move(f));
}

// s < t is s+1 <= t.
inline FormulaPtr lt(TermPtr l, TermPtr r) { return leq(succ(std::move(l)), std::move(r)); }

inline FormulaPtr str_eq(StrPtr l, StrPtr r) {
  Formula f;
  f.kind = Formula::Kind::StrEq;
  f.set = std::move(l);
  f.set2 = std::move(r);
  return make(std::move(f));
}

inline FormulaPtr in(TermPtr t, StrPtr s) {
  Formula f;
  f.kind = Formula::Kind::In;
  f.lhs = std::move(t);
  f.set = std::move(s);
  return make(std::move(f));
}

inline FormulaPtr not_(FormulaPtr a) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.a = std::move(a);
  return make(std::move(f));
}

inline FormulaPtr and_(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.a = std::move(a);
  f.b = std::move(b);
  return make(std::move(f));
}

inline FormulaPtr or_(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Formula::Kind::Or;
  f.a = std::move(a);
  f.b = std::move(b);
  return make(std::move(f));
}

inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return or_(not_(std::move(a)), std::move(b)); }

inline FormulaPtr iff(const FormulaPtr& a, const FormulaPtr& b) {
  return and_(implies(a, b), implies(b, a));
}

// Left-nested conjunction; empty list is true.
inline FormulaPtr conj(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return truth(true);
  FormulaPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = and_(acc, parts[i]);
  return acc;
}

inline FormulaPtr quant(Formula::Kind k, std::string v, TermPtr bound, FormulaPtr body) {
  Formula f;
  f.kind = k;
  f.var = std::move(v);
  f.bound = std::move(bound);
  f.a = std::move(body);
  return make(std::move(f));
}

inline FormulaPtr exists(std::string v, TermPtr bound, FormulaPtr body) {
  return quant(Formula::Kind::ExistsNum, std::move(v), std::move(bound), std::move(body));
}
inline FormulaPtr forall(std::string v, TermPtr bound, FormulaPtr body) {
  return quant(Formula::Kind::ForallNum, std::move(v), std::move(bound), std::move(body));
}
inline FormulaPtr exists_str(std::string v, TermPtr bound, FormulaPtr body) {
  return quant(Formula::Kind::ExistsStr, std::move(v), std::move(bound), std::move(body));
}
inline FormulaPtr forall_str(std::string v, TermPtr bound, FormulaPtr body) {
  return quant(Formula::Kind::ForallStr, std::move(v), std::move(bound), std::move(body));
}

inline FormulaPtr thq(TermPtr count, std::string v, TermPtr bound, FormulaPtr body) {
  Formula f;
  f.kind = Formula::Kind::Thq;
  f.count = std::move(count);
  f.var = std::move(v);
  f.bound = std::move(bound);
  f.a = std::move(body);
  return make(std::move(f));
}

inline FormulaPtr modm(Nat m, std::string v, TermPtr bound, FormulaPtr body) {
  Formula f;
  f.kind = Formula::Kind::Modm;
  f.modulus = m;
  f.var = std::move(v);
  f.bound = std::move(bound);
  f.a = std::move(body);
  return make(std::move(f));
}

// Copy of a quantifier node with a new body (and optionally variable/bound).
inline FormulaPtr with_body(const Formula& q, std::string v, TermPtr bound, FormulaPtr body) {
  Formula f = q;
  f.var = std::move(v);
  f.bound = std::move(bound);
  f.a = std::move(body);
  return make(std::move(f));
}

}  // namespace ast

}  // namespace tcforge::logic
