#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/bitset.hpp"
#include "tcforge/kernel/primitives.hpp"
#include "tcforge/kernel/table2d.hpp"
#include "tcforge/logic/syntax.hpp"

namespace tcforge::logic {

enum class Sort { Number, String };

using NumFn = std::function<Nat(std::span<const Nat>, std::span<const BitSet>)>;
using StrFn = std::function<BitSet(std::span<const Nat>, std::span<const BitSet>)>;

// A registered function symbol.
//
// String functions: F(x,X)(var) <-> var < bound & body, and |F(x,X)| <= bound.
// Number functions: f(x,X) = var <-> var <= bound & body (graph definition),
// so bound is also a value bound.
// bound is a base term over the parameters; body mentions only the
// parameters, var, and symbols registered earlier.
struct FunctionDef {
  std::string name;
  Sort sort = Sort::String;
  std::vector<std::string> num_params;
  std::vector<std::string> str_params;
  std::string var;
  TermPtr bound;
  FormulaPtr body;  // null for numones, which is primitive
  NumFn num_native;
  StrFn str_native;
  Nat index = 0;

  bool primitive_count() const { return name == "numones" && !body; }
  Nat num_arity() const { return num_params.size(); }
  Nat str_arity() const { return str_params.size(); }

  Subst param_subst(const std::vector<TermPtr>& nums, const std::vector<StrPtr>& strs) const {
    Subst s;
    for (std::size_t i = 0; i < num_params.size(); ++i) s.nums[num_params[i]] = nums.at(i);
    for (std::size_t i = 0; i < str_params.size(); ++i) s.strs[str_params[i]] = strs.at(i);
    return s;
  }
};

class FunctionRegistry {
 public:
  // numones, pd, fse and row, each with its defining formula.
  static FunctionRegistry standard();

  const FunctionDef* find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &defs_[it->second];
  }
  const FunctionDef& at(const std::string& name) const {
    if (auto* d = find(name)) return *d;
    throw DomainError("unknown function symbol '" + name + "'");
  }
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  const std::vector<FunctionDef>& all() const { return defs_; }

  // Validates and appends; later symbols may use earlier ones only.
  const FunctionDef& add(FunctionDef def) {
    if (def.name.empty()) throw DomainError("function needs a name");
    if (contains(def.name)) throw DomainError("function '" + def.name + "' already registered");
    if (!def.bound) throw DomainError("function '" + def.name + "' needs a bound term");
    if (!is_base(def.bound)) throw DomainError("bound of '" + def.name + "' must be a base term");
    std::set<std::string> params(def.num_params.begin(), def.num_params.end());
    std::set<std::string> sparams(def.str_params.begin(), def.str_params.end());
    VarSets bv = free_vars(def.bound);
    for (const auto& v : bv.nums)
      if (!params.count(v)) throw DomainError("bound of '" + def.name + "' mentions non-parameter " + v);
    for (const auto& v : bv.strs)
      if (!sparams.count(v)) throw DomainError("bound of '" + def.name + "' mentions non-parameter " + v);
    if (def.body) {
      if (def.var.empty()) throw DomainError("definition of '" + def.name + "' needs a variable");
      VarSets fv = free_vars(def.body);
      for (const auto& v : fv.nums)
        if (!params.count(v) && v != def.var)
          throw DomainError("definition of '" + def.name + "' mentions free variable " + v);
      for (const auto& v : fv.strs)
        if (!sparams.count(v)) throw DomainError("definition of '" + def.name + "' mentions free variable " + v);
      for (const auto& s : symbols(def.body))
        if (!contains(s)) throw DomainError("definition of '" + def.name + "' uses unregistered symbol " + s);
    } else if (def.name != "numones" && !def.num_native && !def.str_native) {
      throw DomainError("function '" + def.name + "' has neither definition nor evaluator");
    }
    def.index = defs_.size();
    by_name_[def.name] = defs_.size();
    defs_.push_back(std::move(def));
    return defs_.back();
  }

 private:
  std::vector<FunctionDef> defs_;
  std::map<std::string, std::size_t> by_name_;
};

inline FunctionRegistry FunctionRegistry::standard() {
  using namespace ast;
  FunctionRegistry r;

  FunctionDef numones_def;
  numones_def.name = "numones";
  numones_def.sort = Sort::Number;
  numones_def.num_params = {"t"};
  numones_def.str_params = {"X"};
  numones_def.bound = var("t");
  numones_def.num_native = [](std::span<const Nat> n, std::span<const BitSet> s) { return numones(n[0], s[0]); };
  r.add(std::move(numones_def));

  // pd(x) = y <-> y <= x & ((x = 0 & y = 0) | y + 1 = x)
  FunctionDef pd_def;
  pd_def.name = "pd";
  pd_def.sort = Sort::Number;
  pd_def.num_params = {"x"};
  pd_def.var = "y";
  pd_def.bound = var("x");
  pd_def.body = or_(and_(eq(var("x"), zero()), eq(var("y"), zero())), eq(succ(var("y")), var("x")));
  pd_def.num_native = [](std::span<const Nat> n, std::span<const BitSet>) { return pd(n[0]); };
  r.add(std::move(pd_def));

  // fse(X,Y) = y <-> y <= |X| & (y < |X| -> X(y) != Y(y)) & A w < y : (X(w) <-> Y(w))
  FunctionDef fse_def;
  fse_def.name = "fse";
  fse_def.sort = Sort::Number;
  fse_def.str_params = {"X", "Y"};
  fse_def.var = "y";
  fse_def.bound = len(svar("X"));
  {
    auto xy = in(var("y"), svar("X"));
    auto yy = in(var("y"), svar("Y"));
    auto differ = or_(and_(xy, not_(yy)), and_(not_(xy), yy));
    auto agree = forall("w", var("y"), iff(in(var("w"), svar("X")), in(var("w"), svar("Y"))));
    fse_def.body = and_(implies(lt(var("y"), len(svar("X"))), differ), agree);
  }
  fse_def.num_native = [](std::span<const Nat>, std::span<const BitSet> s) { return fse(s[0], s[1]); };
  r.add(std::move(fse_def));

  // row(x,Z)(i) <-> i < |Z| & Z(<x,i>)
  FunctionDef row_def;
  row_def.name = "row";
  row_def.sort = Sort::String;
  row_def.num_params = {"x"};
  row_def.str_params = {"Z"};
  row_def.var = "i";
  row_def.bound = len(svar("Z"));
  row_def.body = in(pair(var("x"), var("i")), svar("Z"));
  row_def.str_native = [](std::span<const Nat> n, std::span<const BitSet> s) { return tcforge::row(n[0], s[0]); };
  r.add(std::move(row_def));

  return r;
}

}  // namespace tcforge::logic
