#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "tcforge/logic/ast.hpp"

namespace tcforge::logic {

// ---------------------------------------------------------------------------
// Structural equality

bool equal(const TermPtr& x, const TermPtr& y);
bool equal(const StrPtr& x, const StrPtr& y);

template <typename P>
bool equal_lists(const std::vector<P>& x, const std::vector<P>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!equal(x[i], y[i])) return false;
  return true;
}

inline bool equal(const TermPtr& x, const TermPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  using K = NumTerm::Kind;
  switch (x->kind) {
    case K::Lit: return x->value == y->value;
    case K::Var: return x->name == y->name;
    case K::Add:
    case K::Mul: return equal(x->lhs, y->lhs) && equal(x->rhs, y->rhs);
    case K::Len: return equal(x->str, y->str);
    case K::App: return x->name == y->name && equal_lists(x->num_args, y->num_args) && equal_lists(x->str_args, y->str_args);
  }
  return false;
}

inline bool equal(const StrPtr& x, const StrPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind || x->name != y->name) return false;
  return equal_lists(x->num_args, y->num_args) && equal_lists(x->str_args, y->str_args);
}

inline bool equal(const FormulaPtr& x, const FormulaPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  using K = Formula::Kind;
  switch (x->kind) {
    case K::True:
    case K::False: return true;
    case K::Eq:
    case K::Leq: return equal(x->lhs, y->lhs) && equal(x->rhs, y->rhs);
    case K::StrEq: return equal(x->set, y->set) && equal(x->set2, y->set2);
    case K::In: return equal(x->lhs, y->lhs) && equal(x->set, y->set);
    case K::Not: return equal(x->a, y->a);
    case K::And:
    case K::Or: return equal(x->a, y->a) && equal(x->b, y->b);
    default:
      return x->var == y->var && equal(x->bound, y->bound) && equal(x->count, y->count) &&
             x->modulus == y->modulus && equal(x->a, y->a);
  }
}

// ---------------------------------------------------------------------------
// Traversal

struct Visitor {
  std::function<void(const NumTerm&)> on_term;
  std::function<void(const StrTerm&)> on_str;
  std::function<void(const Formula&)> on_formula;
};

inline void visit(const StrPtr& s, const Visitor& v);

inline void visit(const TermPtr& t, const Visitor& v) {
  if (!t) return;
  if (v.on_term) v.on_term(*t);
  visit(t->lhs, v);
  visit(t->rhs, v);
  visit(t->str, v);
  for (const auto& a : t->num_args) visit(a, v);
  for (const auto& a : t->str_args) visit(a, v);
}

inline void visit(const StrPtr& s, const Visitor& v) {
  if (!s) return;
  if (v.on_str) v.on_str(*s);
  for (const auto& a : s->num_args) visit(a, v);
  for (const auto& a : s->str_args) visit(a, v);
}

inline void visit(const FormulaPtr& f, const Visitor& v) {
  if (!f) return;
  if (v.on_formula) v.on_formula(*f);
  visit(f->lhs, v);
  visit(f->rhs, v);
  visit(f->set, v);
  visit(f->set2, v);
  visit(f->bound, v);
  visit(f->count, v);
  visit(f->a, v);
  visit(f->b, v);
}

// Every identifier occurring anywhere (variables, binders, function symbols).
template <typename Node>
void collect_names(const Node& n, std::set<std::string>& out) {
  visit(n, Visitor{[&](const NumTerm& t) {
                     if (!t.name.empty()) out.insert(t.name);
                   },
                   [&](const StrTerm& s) { out.insert(s.name); },
                   [&](const Formula& f) {
                     if (!f.var.empty()) out.insert(f.var);
                   }});
}

// Function symbols occurring in a node.
template <typename Node>
std::set<std::string> symbols(const Node& n) {
  std::set<std::string> out;
  visit(n, Visitor{[&](const NumTerm& t) {
                     if (t.kind == NumTerm::Kind::App) out.insert(t.name);
                   },
                   [&](const StrTerm& s) {
                     if (s.kind == StrTerm::Kind::App) out.insert(s.name);
                   },
                   nullptr});
  return out;
}

// Only 0, 1, literals, variables, +, * and |X| with X a variable.
template <typename Node>
bool is_base(const Node& n) {
  return symbols(n).empty();
}

inline bool mentions_var(const TermPtr& t, const std::string& name) {
  bool found = false;
  visit(t, Visitor{[&](const NumTerm& x) {
                     if (x.kind == NumTerm::Kind::Var && x.name == name) found = true;
                   },
                   nullptr, nullptr});
  return found;
}

// ---------------------------------------------------------------------------
// Free variables

struct VarSets {
  std::set<std::string> nums;
  std::set<std::string> strs;
};

inline void free_vars_into(const TermPtr& t, VarSets& out);

inline void free_vars_into(const StrPtr& s, VarSets& out) {
  if (!s) return;
  if (s->kind == StrTerm::Kind::Var) out.strs.insert(s->name);
  for (const auto& a : s->num_args) free_vars_into(a, out);
  for (const auto& a : s->str_args) free_vars_into(a, out);
}

inline void free_vars_into(const TermPtr& t, VarSets& out) {
  if (!t) return;
  if (t->kind == NumTerm::Kind::Var) out.nums.insert(t->name);
  free_vars_into(t->lhs, out);
  free_vars_into(t->rhs, out);
  free_vars_into(t->str, out);
  for (const auto& a : t->num_args) free_vars_into(a, out);
  for (const auto& a : t->str_args) free_vars_into(a, out);
}

inline void free_vars_into(const FormulaPtr& f, VarSets& out) {
  if (!f) return;
  free_vars_into(f->lhs, out);
  free_vars_into(f->rhs, out);
  free_vars_into(f->set, out);
  free_vars_into(f->set2, out);
  free_vars_into(f->bound, out);
  free_vars_into(f->count, out);
  free_vars_into(f->b, out);
  if (is_quantifier(f->kind)) {
    VarSets inner;
    free_vars_into(f->a, inner);
    const bool str_binder = f->kind == Formula::Kind::ExistsStr || f->kind == Formula::Kind::ForallStr;
    (str_binder ? inner.strs : inner.nums).erase(f->var);
    out.nums.insert(inner.nums.begin(), inner.nums.end());
    out.strs.insert(inner.strs.begin(), inner.strs.end());
  } else {
    free_vars_into(f->a, out);
  }
}

template <typename Node>
VarSets free_vars(const Node& n) {
  VarSets out;
  free_vars_into(n, out);
  return out;
}

// ---------------------------------------------------------------------------
// Fresh names from a deterministic counter

class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  template <typename Node>
  void reserve_from(const Node& n) {
    collect_names(n, used_);
  }
  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }

  // prefix_1, prefix_2, ... skipping anything already in use.
  std::string fresh(const std::string& prefix) {
    std::string base = prefix;
    if (auto us = base.find('_'); us != std::string::npos) base = base.substr(0, us);
    if (base.empty()) base = "v";
    Nat& k = counters_[base];
    std::string name;
    do {
      name = base + "_" + std::to_string(++k);
    } while (used_.count(name));
    used_.insert(name);
    return name;
  }

 private:
  std::set<std::string> used_;
  std::map<std::string, Nat> counters_;
};

// ---------------------------------------------------------------------------
// Capture-avoiding substitution

struct Subst {
  std::map<std::string, TermPtr> nums;
  std::map<std::string, StrPtr> strs;
  bool empty() const { return nums.empty() && strs.empty(); }
};

inline StrPtr substitute(const StrPtr& s, const Subst& sub);

inline TermPtr substitute(const TermPtr& t, const Subst& sub) {
  if (!t || sub.empty()) return t;
  using K = NumTerm::Kind;
  switch (t->kind) {
    case K::Lit: return t;
    case K::Var: {
      auto it = sub.nums.find(t->name);
      return it == sub.nums.end() ? t : it->second;
    }
    case K::Add: return ast::add(substitute(t->lhs, sub), substitute(t->rhs, sub));
    case K::Mul: return ast::mul(substitute(t->lhs, sub), substitute(t->rhs, sub));
    case K::Len: return ast::len(substitute(t->str, sub));
    case K::App: {
      std::vector<TermPtr> nums;
      std::vector<StrPtr> strs;
      for (const auto& a : t->num_args) nums.push_back(substitute(a, sub));
      for (const auto& a : t->str_args) strs.push_back(substitute(a, sub));
      return ast::app(t->name, std::move(nums), std::move(strs));
    }
  }
  return t;
}

inline StrPtr substitute(const StrPtr& s, const Subst& sub) {
  if (!s || sub.empty()) return s;
  if (s->kind == StrTerm::Kind::Var) {
    auto it = sub.strs.find(s->name);
    return it == sub.strs.end() ? s : it->second;
  }
  std::vector<TermPtr> nums;
  std::vector<StrPtr> strs;
  for (const auto& a : s->num_args) nums.push_back(substitute(a, sub));
  for (const auto& a : s->str_args) strs.push_back(substitute(a, sub));
  return ast::sapp(s->name, std::move(nums), std::move(strs));
}

inline FormulaPtr substitute(const FormulaPtr& f, const Subst& sub, NameSupply& names) {
  if (!f || sub.empty()) return f;
  using K = Formula::Kind;
  switch (f->kind) {
    case K::True:
    case K::False: return f;
    case K::Eq: return ast::eq(substitute(f->lhs, sub), substitute(f->rhs, sub));
    case K::Leq: return ast::leq(substitute(f->lhs, sub), substitute(f->rhs, sub));
    case K::StrEq: return ast::str_eq(substitute(f->set, sub), substitute(f->set2, sub));
    case K::In: return ast::in(substitute(f->lhs, sub), substitute(f->set, sub));
    case K::Not: return ast::not_(substitute(f->a, sub, names));
    case K::And: return ast::and_(substitute(f->a, sub, names), substitute(f->b, sub, names));
    case K::Or: return ast::or_(substitute(f->a, sub, names), substitute(f->b, sub, names));
    default: break;
  }
  // Binder: bound and count live outside its scope.
  Formula q = *f;
  q.bound = substitute(f->bound, sub);
  q.count = substitute(f->count, sub);
  const bool str_binder = f->kind == K::ExistsStr || f->kind == K::ForallStr;
  Subst inner = sub;
  if (str_binder) inner.strs.erase(f->var);
  else inner.nums.erase(f->var);
  // Rename the binder if a replacement would be captured by it.
  VarSets incoming;
  for (const auto& [k, v] : inner.nums) free_vars_into(v, incoming);
  for (const auto& [k, v] : inner.strs) free_vars_into(v, incoming);
  const bool captured = str_binder ? incoming.strs.count(f->var) : incoming.nums.count(f->var);
  if (captured) {
    std::string fresh = names.fresh(f->var);
    if (str_binder) inner.strs[f->var] = ast::svar(fresh);
    else inner.nums[f->var] = ast::var(fresh);
    q.var = fresh;
  }
  q.a = substitute(f->a, inner, names);
  return ast::make(std::move(q));
}

// Renames every binder to a fresh name (so the result can be inlined anywhere).
inline FormulaPtr rename_binders(const FormulaPtr& f, NameSupply& names) {
  if (!f) return f;
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Not: return ast::not_(rename_binders(f->a, names));
    case K::And: return ast::and_(rename_binders(f->a, names), rename_binders(f->b, names));
    case K::Or: return ast::or_(rename_binders(f->a, names), rename_binders(f->b, names));
    default: break;
  }
  if (!is_quantifier(f->kind)) return f;
  const bool str_binder = f->kind == K::ExistsStr || f->kind == K::ForallStr;
  std::string fresh = names.fresh(f->var);
  Subst s;
  if (str_binder) s.strs[f->var] = ast::svar(fresh);
  else s.nums[f->var] = ast::var(fresh);
  Formula q = *f;
  q.var = fresh;
  q.a = rename_binders(substitute(f->a, s, names), names);
  return ast::make(std::move(q));
}

// Binders renamed #0, #1, ... in traversal order; equal results mean
// alpha-equivalent formulas.
inline FormulaPtr alpha_normalize(const FormulaPtr& f, Nat& counter) {
  if (!f) return f;
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Not: return ast::not_(alpha_normalize(f->a, counter));
    case K::And: {
      auto l = alpha_normalize(f->a, counter);
      return ast::and_(l, alpha_normalize(f->b, counter));
    }
    case K::Or: {
      auto l = alpha_normalize(f->a, counter);
      return ast::or_(l, alpha_normalize(f->b, counter));
    }
    default: break;
  }
  if (!is_quantifier(f->kind)) return f;
  const bool str_binder = f->kind == K::ExistsStr || f->kind == K::ForallStr;
  std::string canon = "#" + std::to_string(counter++);
  Subst s;
  if (str_binder) s.strs[f->var] = ast::svar(canon);
  else s.nums[f->var] = ast::var(canon);
  NameSupply unused;
  Formula q = *f;
  q.var = canon;
  q.a = alpha_normalize(substitute(f->a, s, unused), counter);
  return ast::make(std::move(q));
}

inline bool alpha_equal(const FormulaPtr& x, const FormulaPtr& y) {
  Nat cx = 0, cy = 0;
  return equal(alpha_normalize(x, cx), alpha_normalize(y, cy));
}

// ---------------------------------------------------------------------------
// Nesting depth of a function symbol: an occurrence of F whose arguments
// contain no F has depth 1.

inline Nat symbol_depth(const StrPtr& s, const std::string& sym);

inline Nat symbol_depth(const TermPtr& t, const std::string& sym) {
  if (!t) return 0;
  Nat d = std::max(symbol_depth(t->lhs, sym), symbol_depth(t->rhs, sym));
  d = std::max(d, symbol_depth(t->str, sym));
  for (const auto& a : t->num_args) d = std::max(d, symbol_depth(a, sym));
  for (const auto& a : t->str_args) d = std::max(d, symbol_depth(a, sym));
  if (t->kind == NumTerm::Kind::App && t->name == sym) ++d;
  return d;
}

inline Nat symbol_depth(const StrPtr& s, const std::string& sym) {
  if (!s) return 0;
  Nat d = 0;
  for (const auto& a : s->num_args) d = std::max(d, symbol_depth(a, sym));
  for (const auto& a : s->str_args) d = std::max(d, symbol_depth(a, sym));
  if (s->kind == StrTerm::Kind::App && s->name == sym) ++d;
  return d;
}

inline Nat symbol_depth(const FormulaPtr& f, const std::string& sym) {
  if (!f) return 0;
  Nat d = std::max(symbol_depth(f->lhs, sym), symbol_depth(f->rhs, sym));
  d = std::max({d, symbol_depth(f->set, sym), symbol_depth(f->set2, sym)});
  d = std::max({d, symbol_depth(f->bound, sym), symbol_depth(f->count, sym)});
  return std::max({d, symbol_depth(f->a, sym), symbol_depth(f->b, sym)});
}

// Number of AST nodes, for size reporting.
inline Nat node_count(const FormulaPtr& f) {
  Nat n = 0;
  visit(f, Visitor{[&](const NumTerm&) { ++n; }, [&](const StrTerm&) { ++n; }, [&](const Formula&) { ++n; }});
  return n;
}

}  // namespace tcforge::logic
