#pragma once

#include <string>

#include "tcforge/logic/registry.hpp"

namespace tcforge::logic {

// Prints in the parser's syntax; parse(to_string(f)) is structurally f
// whenever f has no shadowed binders.

std::string to_string(const StrPtr& s);

inline std::string to_string(const TermPtr& t, int ctx = 0) {
  using K = NumTerm::Kind;
  switch (t->kind) {
    case K::Lit: return std::to_string(t->value);
    case K::Var: return t->name;
    case K::Add: {
      std::string s = to_string(t->lhs, 1) + " + " + to_string(t->rhs, 2);
      return ctx > 1 ? "(" + s + ")" : s;
    }
    case K::Mul: {
      std::string s = to_string(t->lhs, 2) + " * " + to_string(t->rhs, 3);
      return ctx > 2 ? "(" + s + ")" : s;
    }
    case K::Len: return "|" + to_string(t->str) + "|";
    case K::App: {
      std::string s = t->name + "(";
      bool first = true;
      for (const auto& a : t->num_args) {
        s += (first ? "" : ", ") + to_string(a);
        first = false;
      }
      for (const auto& a : t->str_args) {
        s += (first ? "" : ", ") + to_string(a);
        first = false;
      }
      return s + ")";
    }
  }
  return "?";
}

inline std::string to_string(const StrPtr& s) {
  if (s->kind == StrTerm::Kind::Var) return s->name;
  std::string out = s->name + "(";
  bool first = true;
  for (const auto& a : s->num_args) {
    out += (first ? "" : ", ") + to_string(a);
    first = false;
  }
  for (const auto& a : s->str_args) {
    out += (first ? "" : ", ") + to_string(a);
    first = false;
  }
  return out + ")";
}

// Precedence: quantifiers 0, | 1, & 2, ! and atoms 3.
inline std::string to_string(const FormulaPtr& f, int ctx = 0) {
  using K = Formula::Kind;
  auto wrap = [&](int prec, std::string s) { return prec < ctx ? "(" + s + ")" : s; };
  switch (f->kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Eq: return to_string(f->lhs) + " = " + to_string(f->rhs);
    case K::Leq: return to_string(f->lhs) + " <= " + to_string(f->rhs);
    case K::StrEq: return to_string(f->set) + " = " + to_string(f->set2);
    case K::In: return to_string(f->set) + "(" + to_string(f->lhs) + ")";
    case K::Not: return "!" + to_string(f->a, 3);
    case K::And: return wrap(2, to_string(f->a, 2) + " & " + to_string(f->b, 3));
    case K::Or: return wrap(1, to_string(f->a, 1) + " | " + to_string(f->b, 2));
    case K::ExistsNum: return wrap(0, "E " + f->var + " < " + to_string(f->bound) + " : " + to_string(f->a));
    case K::ForallNum: return wrap(0, "A " + f->var + " < " + to_string(f->bound) + " : " + to_string(f->a));
    case K::ExistsStr: return wrap(0, "E " + f->var + " <= " + to_string(f->bound) + " : " + to_string(f->a));
    case K::ForallStr: return wrap(0, "A " + f->var + " <= " + to_string(f->bound) + " : " + to_string(f->a));
    case K::Thq:
      return wrap(0, "Th[" + to_string(f->count) + "] " + f->var + " < " + to_string(f->bound) + " : " +
                         to_string(f->a));
    case K::Modm:
      return wrap(0, "Mod[" + std::to_string(f->modulus) + "] " + f->var + " < " + to_string(f->bound) + " : " +
                         to_string(f->a));
  }
  return "?";
}

// Prints a registered definition in the form accepted by `define`.
inline std::string to_string(const FunctionDef& d) {
  std::string params;
  for (const auto& p : d.num_params) params += (params.empty() ? "" : ", ") + p;
  for (const auto& p : d.str_params) params += (params.empty() ? "" : ", ") + p;
  std::string head = d.name + "(" + params + ") := ";
  if (!d.body) return head + "<primitive>";
  if (d.sort == Sort::String) return head + "{ " + d.var + " < " + to_string(d.bound) + " : " + to_string(d.body) + " }";
  return head + "graph " + d.var + " <= " + to_string(d.bound) + " : " + to_string(d.body);
}

}  // namespace tcforge::logic
