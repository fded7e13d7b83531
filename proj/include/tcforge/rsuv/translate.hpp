#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "tcforge/kernel/assignment.hpp"
#include "tcforge/logic/ast.hpp"
#include "tcforge/logic/syntax.hpp"
#include "tcforge/rsuv/delta.hpp"

namespace tcforge::rsuv {

// The two-sorted fragment handled here: base number terms (literals,
// variables, +, *, |X|), atoms =, <=, X(t), X = Y, connectives, and bounded
// number quantifiers. String variables become number variables holding
// their set encoding.
class UnsupportedFragment : public DomainError {
 public:
  using DomainError::DomainError;
};

struct FlatResult {
  DeltaFormulaPtr formula;
  std::map<std::string, std::string> number_for;  // string variable -> number variable
};

namespace translate_detail {

inline void number_names(const logic::FormulaPtr& f, std::set<std::string>& out) {
  logic::visit(f, logic::Visitor{[&](const logic::NumTerm& t) {
                                   if (t.kind == logic::NumTerm::Kind::Var) out.insert(t.name);
                                 },
                                 nullptr,
                                 [&](const logic::Formula& g) {
                                   if (!g.var.empty()) out.insert(g.var);
                                 }});
}

class Flattener {
 public:
  explicit Flattener(const logic::FormulaPtr& phi) {
    std::set<std::string> taken;
    number_names(phi, taken);
    for (const auto& s : logic::free_vars(phi).strs) {
      std::string name = s;
      for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      while (taken.count(name)) name += "_s";
      taken.insert(name);
      number_for_[s] = name;
    }
  }

  const std::map<std::string, std::string>& number_for() const { return number_for_; }

  DeltaPtr term(const logic::TermPtr& t) const {
    using K = logic::NumTerm::Kind;
    switch (t->kind) {
      case K::Lit: return delta::lit(t->value);
      case K::Var: return delta::var(t->name);
      case K::Add: return delta::add(term(t->lhs), term(t->rhs));
      case K::Mul: return delta::mul(term(t->lhs), term(t->rhs));
      case K::Len: return delta::len(string_var(t->str));
      case K::App: throw UnsupportedFragment("function symbol '" + t->name + "' is outside the translatable fragment");
    }
    throw UnsupportedFragment("unknown term");
  }

  DeltaFormulaPtr formula(const logic::FormulaPtr& f) const {
    using K = logic::Formula::Kind;
    switch (f->kind) {
      case K::True: return delta::truth(true);
      case K::False: return delta::truth(false);
      case K::Eq: return delta::eq(term(f->lhs), term(f->rhs));
      case K::Leq: return delta::leq(term(f->lhs), term(f->rhs));
      case K::StrEq: return delta::eq(string_var(f->set), string_var(f->set2));
      case K::In: return delta::eq(delta::bit(term(f->lhs), string_var(f->set)), delta::lit(1));
      case K::Not: return delta::not_(formula(f->a));
      case K::And: return delta::and_(formula(f->a), formula(f->b));
      case K::Or: return delta::or_(formula(f->a), formula(f->b));
      case K::ExistsNum:
        return delta::quant(DeltaFormula::Kind::Exists, f->var, term(f->bound), formula(f->a));
      case K::ForallNum:
        return delta::quant(DeltaFormula::Kind::Forall, f->var, term(f->bound), formula(f->a));
      case K::ExistsStr:
      case K::ForallStr: throw UnsupportedFragment("string quantifiers are outside the translatable fragment");
      case K::Thq:
      case K::Modm: throw UnsupportedFragment("counting quantifiers are outside the translatable fragment");
    }
    throw UnsupportedFragment("unknown formula");
  }

 private:
  DeltaPtr string_var(const logic::StrPtr& s) const {
    if (s->kind != logic::StrTerm::Kind::Var)
      throw UnsupportedFragment("string function '" + s->name + "' is outside the translatable fragment");
    return delta::var(number_for_.at(s->name));
  }

  std::map<std::string, std::string> number_for_;
};

}  // namespace translate_detail

inline FlatResult flat_translate(const logic::FormulaPtr& phi) {
  translate_detail::Flattener fl(phi);
  return FlatResult{fl.formula(phi), fl.number_for()};
}

inline DeltaPtr flat_translate(const logic::TermPtr& t) {
  translate_detail::Flattener fl(logic::ast::eq(t, t));
  return fl.term(t);
}

// Number variables keep their values; string variables are encoded.
inline DeltaEnv encode_env(const Assignment& env, const std::map<std::string, std::string>& number_for) {
  DeltaEnv out;
  for (const auto& [name, v] : env.nums()) out[name] = v;
  for (const auto& [name, s] : env.strs()) {
    auto it = number_for.find(name);
    out[it == number_for.end() ? name : it->second] = encode_num(s);
  }
  return out;
}

// Back from the first sort: each number variable in `string_for` becomes the
// named string variable; it may occur only as len(x), bit(t, x) = 0 or 1, and
// x = y between two such variables.
class Sharpener {
 public:
  explicit Sharpener(std::map<std::string, std::string> string_for) : string_for_(std::move(string_for)) {}

  logic::TermPtr term(const DeltaPtr& t) const {
    using K = DeltaTerm::Kind;
    using namespace logic::ast;
    switch (t->kind) {
      case K::Lit: return lit(to_nat(t->value, "literal"));
      case K::Var:
        if (string_for_.count(t->name))
          throw UnsupportedFragment("'" + t->name + "' encodes a string and is used as a number");
        return var(t->name);
      case K::Succ: return succ(term(t->a));
      case K::Add: return add(term(t->a), term(t->b));
      case K::Mul: return mul(term(t->a), term(t->b));
      case K::Len: return len(string_var(t->a));
      default: throw UnsupportedFragment(to_string(t) + " has no two-sorted base term");
    }
  }

  logic::FormulaPtr formula(const DeltaFormulaPtr& f) const {
    using K = DeltaFormula::Kind;
    using namespace logic::ast;
    switch (f->kind) {
      case K::True: return truth(true);
      case K::False: return truth(false);
      case K::Eq: {
        if (auto m = membership(f->lhs, f->rhs)) return *m;
        if (auto m = membership(f->rhs, f->lhs)) return *m;
        if (is_string_var(f->lhs) && is_string_var(f->rhs)) return str_eq(string_var(f->lhs), string_var(f->rhs));
        return eq(term(f->lhs), term(f->rhs));
      }
      case K::Leq: return leq(term(f->lhs), term(f->rhs));
      case K::Not: return not_(formula(f->a));
      case K::And: return and_(formula(f->a), formula(f->b));
      case K::Or: return or_(formula(f->a), formula(f->b));
      case K::Exists: return exists(f->var, term(f->bound), formula(f->a));
      case K::Forall: return forall(f->var, term(f->bound), formula(f->a));
    }
    throw UnsupportedFragment("unknown formula");
  }

 private:
  bool is_string_var(const DeltaPtr& t) const {
    return t->kind == DeltaTerm::Kind::Var && string_for_.count(t->name) != 0;
  }

  logic::StrPtr string_var(const DeltaPtr& t) const {
    if (!is_string_var(t)) throw UnsupportedFragment(to_string(t) + " does not encode a string variable");
    return logic::ast::svar(string_for_.at(t->name));
  }

  // bit(t, x) = 1 is t in X, bit(t, x) = 0 its negation.
  std::optional<logic::FormulaPtr> membership(const DeltaPtr& b, const DeltaPtr& v) const {
    if (b->kind != DeltaTerm::Kind::Bit || v->kind != DeltaTerm::Kind::Lit || v->value > 1) return std::nullopt;
    logic::FormulaPtr in = logic::ast::in(term(b->a), string_var(b->b));
    return v->value == 1 ? in : logic::ast::not_(in);
  }

  std::map<std::string, std::string> string_for_;
};

inline logic::FormulaPtr sharp_translate(const DeltaFormulaPtr& f, const std::map<std::string, std::string>& string_for) {
  return Sharpener(string_for).formula(f);
}

inline logic::TermPtr sharp_translate(const DeltaPtr& t, const std::map<std::string, std::string>& string_for) {
  return Sharpener(string_for).term(t);
}

// Number variables that encode strings are decoded; the rest must fit 64 bits.
inline Assignment decode_env(const DeltaEnv& env, const std::map<std::string, std::string>& string_for) {
  Assignment out;
  for (const auto& [name, v] : env) {
    auto it = string_for.find(name);
    if (it != string_for.end()) out.bind(it->second, decode_num(v));
    else out.bind(name, to_nat(v, "number variable " + name));
  }
  return out;
}

inline std::map<std::string, std::string> invert(const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : m) out[v] = k;
  return out;
}

}  // namespace tcforge::rsuv
