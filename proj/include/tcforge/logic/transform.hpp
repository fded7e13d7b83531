#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tcforge/logic/classify.hpp"
#include "tcforge/logic/registry.hpp"

namespace tcforge::logic {

// ---------------------------------------------------------------------------
// Base-term upper bounds for arbitrary terms

namespace transform_detail {

inline TermPtr len_bound(const StrPtr& s, const FunctionRegistry& reg);
inline TermPtr value_bound(const TermPtr& t, const FunctionRegistry& reg);

// def.bound with number parameters and |string parameter| replaced.
inline TermPtr instantiate_bound(const TermPtr& b, const FunctionDef& d, const std::vector<TermPtr>& nums,
                                 const std::vector<TermPtr>& lens) {
  using K = NumTerm::Kind;
  switch (b->kind) {
    case K::Lit: return b;
    case K::Var:
      for (std::size_t i = 0; i < d.num_params.size(); ++i)
        if (d.num_params[i] == b->name) return nums[i];
      throw DomainError("bound of '" + d.name + "' mentions " + b->name);
    case K::Add: return ast::add(instantiate_bound(b->lhs, d, nums, lens), instantiate_bound(b->rhs, d, nums, lens));
    case K::Mul: return ast::mul(instantiate_bound(b->lhs, d, nums, lens), instantiate_bound(b->rhs, d, nums, lens));
    case K::Len:
      for (std::size_t i = 0; i < d.str_params.size(); ++i)
        if (b->str->kind == StrTerm::Kind::Var && d.str_params[i] == b->str->name) return lens[i];
      throw DomainError("bound of '" + d.name + "' is not a base term over its parameters");
    case K::App: throw DomainError("bound of '" + d.name + "' is not a base term");
  }
  return b;
}

inline TermPtr bound_of_app(const FunctionDef& d, const std::vector<TermPtr>& num_args,
                            const std::vector<StrPtr>& str_args, const FunctionRegistry& reg) {
  std::vector<TermPtr> nums, lens;
  for (const auto& a : num_args) nums.push_back(value_bound(a, reg));
  for (const auto& a : str_args) lens.push_back(len_bound(a, reg));
  return instantiate_bound(d.bound, d, nums, lens);
}

// A base term >= |s| under every assignment.
inline TermPtr len_bound(const StrPtr& s, const FunctionRegistry& reg) {
  if (s->kind == StrTerm::Kind::Var) return ast::len(s);
  return bound_of_app(reg.at(s->name), s->num_args, s->str_args, reg);
}

// A base term >= t under every assignment (base polynomials are monotone).
inline TermPtr value_bound(const TermPtr& t, const FunctionRegistry& reg) {
  using K = NumTerm::Kind;
  switch (t->kind) {
    case K::Lit:
    case K::Var: return t;
    case K::Add: return ast::add(value_bound(t->lhs, reg), value_bound(t->rhs, reg));
    case K::Mul: return ast::mul(value_bound(t->lhs, reg), value_bound(t->rhs, reg));
    case K::Len: return len_bound(t->str, reg);
    case K::App: return bound_of_app(reg.at(t->name), t->num_args, t->str_args, reg);
  }
  return t;
}

}  // namespace transform_detail

// Rewrites quantifiers whose bound or threshold term uses defined symbols
// into ones bounded by base terms, moving the real bound into the body.
inline FormulaPtr normalize_bounds(const FormulaPtr& f, const FunctionRegistry& reg, NameSupply& names) {
  using K = Formula::Kind;
  using transform_detail::value_bound;
  if (symbols(f).empty()) return f;
  switch (f->kind) {
    case K::Not: return ast::not_(normalize_bounds(f->a, reg, names));
    case K::And: return ast::and_(normalize_bounds(f->a, reg, names), normalize_bounds(f->b, reg, names));
    case K::Or: return ast::or_(normalize_bounds(f->a, reg, names), normalize_bounds(f->b, reg, names));
    default: break;
  }
  if (!is_quantifier(f->kind)) return f;
  FormulaPtr body = normalize_bounds(f->a, reg, names);
  TermPtr bound = f->bound;
  if (!is_base(bound)) {
    if (f->kind == K::ExistsStr || f->kind == K::ForallStr) throw DomainError("string quantifier with non-base bound");
    FormulaPtr inside = ast::lt(ast::var(f->var), bound);
    body = f->kind == K::ForallNum ? ast::implies(inside, body) : ast::and_(inside, body);
    bound = value_bound(bound, reg);
  }
  FormulaPtr out = ast::with_body(*f, f->var, bound, body);
  if (f->kind == K::Thq && !is_base(f->count)) {
    std::string v = names.fresh("c");
    Formula q = *out;
    q.count = ast::var(v);
    out = ast::exists(v, ast::succ(value_bound(f->count, reg)), ast::and_(ast::eq(ast::var(v), f->count), ast::make(q)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Threshold quantifiers to numones over comprehension functions

struct Lowering {
  FormulaPtr formula;
  FunctionRegistry registry;
  std::vector<std::string> introduced;
};

// Each Th[s] z<t psi, innermost first, becomes s <= numones(t, F(params))
// with F(params)(z) <-> z < t & psi registered as a new string function.
inline Lowering lower_th_to_count(const FormulaPtr& phi, const FunctionRegistry& reg) {
  const FormulaClass c = classify(phi);
  if (c != FormulaClass::SigB0 && c != FormulaClass::SigB0Th)
    throw DomainError("lower-th expects a SigB0 or SigB0Th formula, got " + std::string(class_name(c)));
  Lowering out{nullptr, reg, {}};
  NameSupply names;
  names.reserve_from(phi);
  for (const auto& d : reg.all()) names.reserve(d.name);

  std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& f) -> FormulaPtr {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Not: return ast::not_(go(f->a));
      case K::And: return ast::and_(go(f->a), go(f->b));
      case K::Or: return ast::or_(go(f->a), go(f->b));
      case K::ExistsNum:
      case K::ForallNum: return ast::with_body(*f, f->var, f->bound, go(f->a));
      case K::Thq: {
        FormulaPtr psi = go(f->a);
        if (f->count->kind == NumTerm::Kind::Lit && f->count->value == 0) return ast::truth(true);
        VarSets fv = free_vars(psi);
        fv.nums.erase(f->var);
        VarSets bv = free_vars(f->bound);
        fv.nums.insert(bv.nums.begin(), bv.nums.end());
        fv.strs.insert(bv.strs.begin(), bv.strs.end());
        FunctionDef d;
        d.name = names.fresh("F");
        d.sort = Sort::String;
        d.num_params.assign(fv.nums.begin(), fv.nums.end());
        d.str_params.assign(fv.strs.begin(), fv.strs.end());
        d.var = f->var;
        d.bound = f->bound;
        d.body = psi;
        std::vector<TermPtr> nums;
        std::vector<StrPtr> strs;
        for (const auto& v : d.num_params) nums.push_back(ast::var(v));
        for (const auto& v : d.str_params) strs.push_back(ast::svar(v));
        StrPtr applied = ast::sapp(d.name, nums, strs);
        out.introduced.push_back(d.name);
        out.registry.add(std::move(d));
        return ast::leq(f->count, ast::app("numones", {f->bound}, {applied}));
      }
      default: return f;
    }
  };
  out.formula = go(phi);
  return out;
}

// ---------------------------------------------------------------------------
// numones and defined symbols back to pure SigB0-Th

struct EliminationStep {
  std::string symbol;
  Nat depth_before = 0;
  Nat depth_after = 0;
};

struct Elimination {
  FormulaPtr formula;
  std::vector<EliminationStep> trace;
};

class Eliminator {
 public:
  Eliminator(const FunctionRegistry& reg, const FormulaPtr& phi) : reg_(reg) {
    names_.reserve_from(phi);
    for (const auto& d : reg.all()) {
      names_.reserve(d.name);
      if (d.body) names_.reserve_from(d.body);
      for (const auto& p : d.num_params) names_.reserve(p);
      for (const auto& p : d.str_params) names_.reserve(p);
    }
  }

  Elimination run(const FormulaPtr& phi) {
    for (const auto& s : symbols(phi)) check_symbol(s);
    FormulaPtr out = full(normalize_bounds(phi, reg_, names_));
    if (!symbols(out).empty()) throw DomainError("elimination left defined symbols behind");
    return Elimination{out, trace_};
  }

 private:
  void check_symbol(const std::string& s) {
    const FunctionDef& d = reg_.at(s);
    if (!d.body && !d.primitive_count()) throw DomainError("symbol '" + s + "' has no bit-definition");
    if (d.body)
      for (const auto& inner : symbols(d.body)) check_symbol(inner);
  }

  FormulaPtr full(const FormulaPtr& f) {
    if (symbols(f).empty()) return f;
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Not: return ast::not_(full(f->a));
      case K::And: return ast::and_(full(f->a), full(f->b));
      case K::Or: return ast::or_(full(f->a), full(f->b));
      default: break;
    }
    if (is_quantifier(f->kind)) {
      if (!is_base(f->bound) || (f->count && !is_base(f->count))) return full(normalize_bounds(f, reg_, names_));
      return ast::with_body(*f, f->var, f->bound, full(f->a));
    }
    return atom(f);
  }

  // Highest-index symbol in an atomic formula.
  const FunctionDef& top_symbol(const FormulaPtr& f) const {
    const FunctionDef* best = nullptr;
    for (const auto& s : symbols(f)) {
      const FunctionDef& d = reg_.at(s);
      if (!best || d.index > best->index) best = &d;
    }
    return *best;
  }

  FormulaPtr atom(const FormulaPtr& f) {
    const FunctionDef& top = top_symbol(f);
    if (top.primitive_count()) {
      // numones is registered first, so no other symbol remains here.
      if (symbols(f).size() != 1) throw DomainError("numones applied to a defined string function");
      return count_base_case(f);
    }
    return inductive_step(f, top);
  }

  // ---- numones only: introduce u_k = numones(t'_k, X_k) characterized by
  // Th[u_k] z<t'_k X_k(z) & !Th[u_k+1] z<t'_k X_k(z).

  struct Occurrence {
    TermPtr original;
    std::string var;
  };

  static TermPtr replace_counts(const TermPtr& t, const std::vector<Occurrence>& occ) {
    using K = NumTerm::Kind;
    if (t->kind == K::App && t->name == "numones")
      for (const auto& o : occ)
        if (equal(o.original, t)) return ast::var(o.var);
    switch (t->kind) {
      case K::Add: return ast::add(replace_counts(t->lhs, occ), replace_counts(t->rhs, occ));
      case K::Mul: return ast::mul(replace_counts(t->lhs, occ), replace_counts(t->rhs, occ));
      case K::App: {
        std::vector<TermPtr> nums;
        for (const auto& a : t->num_args) nums.push_back(replace_counts(a, occ));
        return ast::app(t->name, std::move(nums), t->str_args);
      }
      default: return t;
    }
  }

  static void collect_counts(const TermPtr& t, std::vector<TermPtr>& out) {
    if (!t) return;
    collect_counts(t->lhs, out);
    collect_counts(t->rhs, out);
    for (const auto& a : t->num_args) collect_counts(a, out);
    if (t->kind == NumTerm::Kind::App && t->name == "numones") {
      for (const auto& o : out)
        if (equal(o, t)) return;
      out.push_back(t);
    }
  }

  FormulaPtr count_base_case(const FormulaPtr& f) {
    std::vector<TermPtr> found;
    collect_counts(f->lhs, found);
    collect_counts(f->rhs, found);
    std::vector<Occurrence> occ;
    std::vector<TermPtr> bounds;
    for (const auto& o : found) {
      bounds.push_back(replace_counts(o->num_args[0], occ));
      occ.push_back(Occurrence{o, names_.fresh("u")});
    }
    Formula rewritten = *f;
    rewritten.lhs = replace_counts(f->lhs, occ);
    rewritten.rhs = f->rhs ? replace_counts(f->rhs, occ) : nullptr;
    std::vector<FormulaPtr> parts{ast::make(rewritten)};
    for (std::size_t k = 0; k < occ.size(); ++k) {
      const StrPtr& set = occ[k].original->str_args[0];
      std::string z = names_.fresh("z");
      FormulaPtr bit = ast::in(ast::var(z), set);
      TermPtr u = ast::var(occ[k].var);
      parts.push_back(ast::and_(ast::thq(u, z, bounds[k], bit), ast::not_(ast::thq(ast::succ(u), z, bounds[k], bit))));
    }
    FormulaPtr body = ast::conj(parts);
    for (std::size_t k = occ.size(); k-- > 0;) body = ast::exists(occ[k].var, ast::succ(bounds[k]), body);
    return body;
  }

  // ---- one round for a defined symbol F at maximal depth D

  static void collect_at_depth(const TermPtr& t, const std::string& sym, Nat depth, std::vector<TermPtr>& nums,
                               std::vector<StrPtr>& strs) {
    if (!t) return;
    if (t->kind == NumTerm::Kind::App && t->name == sym && symbol_depth(t, sym) == depth) {
      for (const auto& o : nums)
        if (equal(o, t)) return;
      nums.push_back(t);
      return;
    }
    collect_at_depth(t->lhs, sym, depth, nums, strs);
    collect_at_depth(t->rhs, sym, depth, nums, strs);
    collect_at_depth(t->str, sym, depth, nums, strs);
    for (const auto& a : t->num_args) collect_at_depth(a, sym, depth, nums, strs);
    for (const auto& a : t->str_args) collect_at_depth(a, sym, depth, nums, strs);
  }

  static void collect_at_depth(const StrPtr& s, const std::string& sym, Nat depth, std::vector<TermPtr>& nums,
                               std::vector<StrPtr>& strs) {
    if (!s) return;
    if (s->kind == StrTerm::Kind::App && s->name == sym && symbol_depth(s, sym) == depth) {
      for (const auto& o : strs)
        if (equal(o, s)) return;
      strs.push_back(s);
      return;
    }
    for (const auto& a : s->num_args) collect_at_depth(a, sym, depth, nums, strs);
    for (const auto& a : s->str_args) collect_at_depth(a, sym, depth, nums, strs);
  }

  static void collect_at_depth(const FormulaPtr& f, const std::string& sym, Nat depth, std::vector<TermPtr>& nums,
                               std::vector<StrPtr>& strs) {
    collect_at_depth(f->lhs, sym, depth, nums, strs);
    collect_at_depth(f->rhs, sym, depth, nums, strs);
    collect_at_depth(f->set, sym, depth, nums, strs);
    collect_at_depth(f->set2, sym, depth, nums, strs);
  }

  struct Replacement {
    std::vector<TermPtr> num_from;
    std::vector<std::string> num_to;
    std::vector<StrPtr> str_from;
    std::vector<std::string> str_to;
  };

  static StrPtr replace(const StrPtr& s, const Replacement& r) {
    if (!s) return s;
    for (std::size_t i = 0; i < r.str_from.size(); ++i)
      if (equal(r.str_from[i], s)) return ast::svar(r.str_to[i]);
    if (s->kind == StrTerm::Kind::Var) return s;
    std::vector<TermPtr> nums;
    std::vector<StrPtr> strs;
    for (const auto& a : s->num_args) nums.push_back(replace(a, r));
    for (const auto& a : s->str_args) strs.push_back(replace(a, r));
    return ast::sapp(s->name, std::move(nums), std::move(strs));
  }
  static TermPtr replace(const TermPtr& t, const Replacement& r) {
    if (!t) return t;
    for (std::size_t i = 0; i < r.num_from.size(); ++i)
      if (equal(r.num_from[i], t)) return ast::var(r.num_to[i]);
    using K = NumTerm::Kind;
    switch (t->kind) {
      case K::Add: return ast::add(replace(t->lhs, r), replace(t->rhs, r));
      case K::Mul: return ast::mul(replace(t->lhs, r), replace(t->rhs, r));
      case K::Len: return ast::len(replace(t->str, r));
      case K::App: {
        std::vector<TermPtr> nums;
        std::vector<StrPtr> strs;
        for (const auto& a : t->num_args) nums.push_back(replace(a, r));
        for (const auto& a : t->str_args) strs.push_back(replace(a, r));
        return ast::app(t->name, std::move(nums), std::move(strs));
      }
      default: return t;
    }
  }

  static FormulaPtr replace_atom(const FormulaPtr& f, const Replacement& r) {
    Formula g = *f;
    g.lhs = replace(f->lhs, r);
    g.rhs = replace(f->rhs, r);
    g.set = f->set ? replace(f->set, r) : nullptr;
    g.set2 = f->set2 ? replace(f->set2, r) : nullptr;
    return ast::make(std::move(g));
  }

  // Instance of the definition body at `at` with parameters bound to args.
  FormulaPtr instance(const FunctionDef& d, const TermPtr& at, const std::vector<TermPtr>& nums,
                      const std::vector<StrPtr>& strs) {
    FormulaPtr body = rename_binders(d.body, names_);
    Subst s = d.param_subst(nums, strs);
    s.nums[d.var] = at;
    return substitute(body, s, names_);
  }

  TermPtr bound_instance(const FunctionDef& d, const std::vector<TermPtr>& nums, const std::vector<StrPtr>& strs) {
    Subst s = d.param_subst(nums, strs);
    return substitute(d.bound, s);
  }

  FormulaPtr inductive_step(const FormulaPtr& f, const FunctionDef& d) {
    const Nat depth = symbol_depth(f, d.name);
    std::vector<TermPtr> num_occ;
    std::vector<StrPtr> str_occ;
    collect_at_depth(f, d.name, depth, num_occ, str_occ);

    Replacement rep;
    for (const auto& o : num_occ) {
      rep.num_from.push_back(o);
      rep.num_to.push_back(names_.fresh("u"));
    }
    for (const auto& o : str_occ) {
      rep.str_from.push_back(o);
      rep.str_to.push_back(names_.fresh("W"));
    }
    FormulaPtr theta = full(replace_atom(f, rep));

    FormulaPtr result;
    if (d.sort == Sort::Number) {
      std::vector<FormulaPtr> parts{theta};
      for (std::size_t i = 0; i < num_occ.size(); ++i)
        parts.push_back(instance(d, ast::var(rep.num_to[i]), num_occ[i]->num_args, num_occ[i]->str_args));
      result = ast::conj(parts);
      for (std::size_t i = num_occ.size(); i-- > 0;) {
        TermPtr b = bound_instance(d, num_occ[i]->num_args, num_occ[i]->str_args);
        result = ast::exists(rep.num_to[i], ast::succ(b), result);
      }
    } else {
      result = theta;
      for (std::size_t i = 0; i < str_occ.size(); ++i) result = expand_string_eq(result, rep.str_to[i]);
      std::vector<std::string> len_vars(str_occ.size());
      for (std::size_t i = 0; i < str_occ.size(); ++i) {
        const auto& args_n = str_occ[i]->num_args;
        const auto& args_s = str_occ[i]->str_args;
        TermPtr t = bound_instance(d, args_n, args_s);
        bool uses_len = false;
        result = replace_length(result, rep.str_to[i], len_vars[i], uses_len);
        result = inline_membership(result, rep.str_to[i], [&](const TermPtr& r) {
          return ast::and_(ast::lt(r, t), instance(d, r, args_n, args_s));
        });
        if (uses_len) {
          // delta: z <= t, no member at or above z below t, and z-1 a member.
          const std::string& z = len_vars[i];
          std::string x = names_.fresh("x"), p = names_.fresh("p");
          FormulaPtr none_above =
              ast::forall(x, t, ast::implies(ast::leq(ast::var(z), ast::var(x)), ast::not_(instance(d, ast::var(x), args_n, args_s))));
          FormulaPtr top_member = ast::implies(
              ast::lt(ast::zero(), ast::var(z)),
              ast::exists(p, ast::var(z), ast::and_(ast::eq(ast::succ(ast::var(p)), ast::var(z)), instance(d, ast::var(p), args_n, args_s))));
          FormulaPtr delta = ast::and_(ast::and_(ast::leq(ast::var(z), t), none_above), top_member);
          result = ast::exists(z, ast::succ(t), ast::and_(result, delta));
        }
      }
    }
    result = normalize_bounds(result, reg_, names_);
    const Nat after = symbol_depth(result, d.name);
    trace_.push_back(EliminationStep{d.name, depth, after});
    if (after >= depth) throw DomainError("elimination did not reduce the nesting depth of " + d.name);
    return full(result);
  }

  // W = S and S = W become |W| = |S| & A x < |W| : (W(x) <-> S(x)).
  FormulaPtr expand_string_eq(const FormulaPtr& f, const std::string& w) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Not: return ast::not_(expand_string_eq(f->a, w));
      case K::And: return ast::and_(expand_string_eq(f->a, w), expand_string_eq(f->b, w));
      case K::Or: return ast::or_(expand_string_eq(f->a, w), expand_string_eq(f->b, w));
      case K::StrEq: {
        auto is_w = [&](const StrPtr& s) { return s->kind == StrTerm::Kind::Var && s->name == w; };
        if (!is_w(f->set) && !is_w(f->set2)) return f;
        std::string x = names_.fresh("x");
        return ast::and_(ast::eq(ast::len(f->set), ast::len(f->set2)),
                         ast::forall(x, ast::len(f->set),
                                     ast::iff(ast::in(ast::var(x), f->set), ast::in(ast::var(x), f->set2))));
      }
      default:
        if (is_quantifier(f->kind)) return ast::with_body(*f, f->var, f->bound, expand_string_eq(f->a, w));
        return f;
    }
  }

  // |W| -> fresh z everywhere (terms, bounds, thresholds).
  TermPtr replace_length(const TermPtr& t, const std::string& w, std::string& z, bool& used) {
    if (!t) return t;
    using K = NumTerm::Kind;
    switch (t->kind) {
      case K::Len:
        if (t->str->kind == StrTerm::Kind::Var && t->str->name == w) {
          if (z.empty()) z = names_.fresh("z");
          used = true;
          return ast::var(z);
        }
        return t;
      case K::Add: return ast::add(replace_length(t->lhs, w, z, used), replace_length(t->rhs, w, z, used));
      case K::Mul: return ast::mul(replace_length(t->lhs, w, z, used), replace_length(t->rhs, w, z, used));
      default: return t;
    }
  }

  FormulaPtr replace_length(const FormulaPtr& f, const std::string& w, std::string& z, bool& used) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Not: return ast::not_(replace_length(f->a, w, z, used));
      case K::And: return ast::and_(replace_length(f->a, w, z, used), replace_length(f->b, w, z, used));
      case K::Or: return ast::or_(replace_length(f->a, w, z, used), replace_length(f->b, w, z, used));
      default: break;
    }
    Formula g = *f;
    g.lhs = replace_length(f->lhs, w, z, used);
    g.rhs = replace_length(f->rhs, w, z, used);
    g.bound = replace_length(f->bound, w, z, used);
    g.count = replace_length(f->count, w, z, used);
    if (is_quantifier(f->kind)) g.a = replace_length(f->a, w, z, used);
    return ast::make(std::move(g));
  }

  template <typename Inline>
  FormulaPtr inline_membership(const FormulaPtr& f, const std::string& w, const Inline& make) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Not: return ast::not_(inline_membership(f->a, w, make));
      case K::And: return ast::and_(inline_membership(f->a, w, make), inline_membership(f->b, w, make));
      case K::Or: return ast::or_(inline_membership(f->a, w, make), inline_membership(f->b, w, make));
      case K::In:
        if (f->set->kind == StrTerm::Kind::Var && f->set->name == w) return make(f->lhs);
        return f;
      default:
        if (is_quantifier(f->kind)) return ast::with_body(*f, f->var, f->bound, inline_membership(f->a, w, make));
        return f;
    }
  }

  const FunctionRegistry& reg_;
  NameSupply names_;
  std::vector<EliminationStep> trace_;
};

inline Elimination eliminate_counting(const FormulaPtr& phi, const FunctionRegistry& reg) {
  return Eliminator(reg, phi).run(phi);
}

// ---------------------------------------------------------------------------
// phi(y mod m) == E r < m : E q < y + 1 : (y = q*m + r & phi(r))

inline FormulaPtr modm_abbrev(const FormulaPtr& phi, const std::string& hole, const TermPtr& y, Nat m) {
  if (m < 2) throw DomainError("modulus must be at least 2");
  if (!is_base(y)) throw DomainError("mod-m abbreviation needs a base term");
  NameSupply names;
  names.reserve_from(phi);
  names.reserve_from(y);
  names.reserve(hole);
  std::string r = names.fresh("r"), q = names.fresh("q");
  Subst s;
  s.nums[hole] = ast::var(r);
  FormulaPtr body = ast::and_(ast::eq(y, ast::add(ast::mul(ast::var(q), ast::lit(m)), ast::var(r))), substitute(phi, s, names));
  return ast::exists(r, ast::lit(m), ast::exists(q, ast::succ(y), body));
}

}  // namespace tcforge::logic
