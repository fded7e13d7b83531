#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/rsuv/encoding.hpp"

namespace tcforge::rsuv {

// Single-sorted terms: 0, S, +, *, half, |x|, x # y, monus, MSP, mod2, BIT,
// variables and decimal literals.
struct DeltaTerm;
using DeltaPtr = std::shared_ptr<const DeltaTerm>;

struct DeltaTerm {
  enum class Kind { Lit, Var, Succ, Add, Mul, Half, Len, Smash, Monus, Msp, Mod2, Bit };
  Kind kind = Kind::Lit;
  BigNat value;      // Lit
  std::string name;  // Var
  DeltaPtr a, b;     // operands; Bit is BIT(a, b) = bit a of b
};

namespace delta {

inline DeltaPtr make(DeltaTerm::Kind k, DeltaPtr a = nullptr, DeltaPtr b = nullptr) {
  auto t = std::make_shared<DeltaTerm>();
  t->kind = k;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
inline DeltaPtr lit(BigNat v) {
  auto t = std::make_shared<DeltaTerm>();
  t->value = std::move(v);
  return t;
}
inline DeltaPtr var(std::string name) {
  auto t = std::make_shared<DeltaTerm>();
  t->kind = DeltaTerm::Kind::Var;
  t->name = std::move(name);
  return t;
}
inline DeltaPtr succ(DeltaPtr a) { return make(DeltaTerm::Kind::Succ, std::move(a)); }
inline DeltaPtr add(DeltaPtr a, DeltaPtr b) { return make(DeltaTerm::Kind::Add, std::move(a), std::move(b)); }
inline DeltaPtr mul(DeltaPtr a, DeltaPtr b) { return make(DeltaTerm::Kind::Mul, std::move(a), std::move(b)); }
inline DeltaPtr half(DeltaPtr a) { return make(DeltaTerm::Kind::Half, std::move(a)); }
inline DeltaPtr len(DeltaPtr a) { return make(DeltaTerm::Kind::Len, std::move(a)); }
inline DeltaPtr smash(DeltaPtr a, DeltaPtr b) { return make(DeltaTerm::Kind::Smash, std::move(a), std::move(b)); }
inline DeltaPtr monus(DeltaPtr a, DeltaPtr b) { return make(DeltaTerm::Kind::Monus, std::move(a), std::move(b)); }
inline DeltaPtr msp(DeltaPtr x, DeltaPtr i) { return make(DeltaTerm::Kind::Msp, std::move(x), std::move(i)); }
inline DeltaPtr mod2(DeltaPtr a) { return make(DeltaTerm::Kind::Mod2, std::move(a)); }
inline DeltaPtr bit(DeltaPtr i, DeltaPtr x) { return make(DeltaTerm::Kind::Bit, std::move(i), std::move(x)); }

}  // namespace delta

// Binary length, |0| = 0.
inline Nat bin_len(const BigNat& x) { return x == 0 ? 0 : static_cast<Nat>(boost::multiprecision::msb(x)) + 1; }

// Exponents beyond this are refused rather than allocated.
inline constexpr Nat kMaxShift = Nat{1} << 26;

inline BigNat pow2_big(Nat e) {
  if (e > kMaxShift) throw DomainError("2^" + std::to_string(e) + " is too large to materialize");
  BigNat one = 1;
  return one << static_cast<unsigned>(e);
}

inline Nat to_nat(const BigNat& x, std::string_view what) {
  if (x > BigNat(UINT64_MAX)) throw DomainError(std::string(what) + " does not fit in 64 bits");
  return static_cast<Nat>(x);
}

// floor(x / 2^i)
inline BigNat msp(const BigNat& x, const BigNat& i) {
  if (i >= BigNat(bin_len(x))) return 0;
  return x >> static_cast<unsigned>(static_cast<Nat>(i));
}

using DeltaEnv = std::map<std::string, BigNat>;

inline BigNat eval_delta(const DeltaPtr& t, const DeltaEnv& env) {
  using K = DeltaTerm::Kind;
  switch (t->kind) {
    case K::Lit: return t->value;
    case K::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw UnboundVariable(t->name);
      return it->second;
    }
    case K::Succ: return eval_delta(t->a, env) + 1;
    case K::Add: return eval_delta(t->a, env) + eval_delta(t->b, env);
    case K::Mul: return eval_delta(t->a, env) * eval_delta(t->b, env);
    case K::Half: return eval_delta(t->a, env) >> 1;
    case K::Len: return bin_len(eval_delta(t->a, env));
    case K::Smash: {
      const Nat lx = bin_len(eval_delta(t->a, env)), ly = bin_len(eval_delta(t->b, env));
      if (lx != 0 && ly > kMaxShift / lx) throw DomainError("smash exponent too large");
      return pow2_big(lx * ly);
    }
    case K::Monus: {
      BigNat x = eval_delta(t->a, env), y = eval_delta(t->b, env);
      return x > y ? BigNat(x - y) : BigNat(0);
    }
    case K::Msp: return msp(eval_delta(t->a, env), eval_delta(t->b, env));
    case K::Mod2: return eval_delta(t->a, env) & 1;
    case K::Bit: return msp(eval_delta(t->b, env), eval_delta(t->a, env)) & 1;
  }
  return 0;
}

inline std::string to_string(const DeltaPtr& t) {
  using K = DeltaTerm::Kind;
  switch (t->kind) {
    case K::Lit: return t->value.str();
    case K::Var: return t->name;
    case K::Succ: return "S(" + to_string(t->a) + ")";
    case K::Add: return "(" + to_string(t->a) + " + " + to_string(t->b) + ")";
    case K::Mul: return "(" + to_string(t->a) + " * " + to_string(t->b) + ")";
    case K::Half: return "half(" + to_string(t->a) + ")";
    case K::Len: return "len(" + to_string(t->a) + ")";
    case K::Smash: return "smash(" + to_string(t->a) + ", " + to_string(t->b) + ")";
    case K::Monus: return "monus(" + to_string(t->a) + ", " + to_string(t->b) + ")";
    case K::Msp: return "MSP(" + to_string(t->a) + ", " + to_string(t->b) + ")";
    case K::Mod2: return "mod2(" + to_string(t->a) + ")";
    case K::Bit: return "bit(" + to_string(t->a) + ", " + to_string(t->b) + ")";
  }
  return "?";
}

inline bool equal(const DeltaPtr& x, const DeltaPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  if (x->kind == DeltaTerm::Kind::Lit) return x->value == y->value;
  if (x->kind == DeltaTerm::Kind::Var) return x->name == y->name;
  return equal(x->a, y->a) && equal(x->b, y->b);
}

// Open and bounded first-sort formulas over delta terms.
struct DeltaFormula;
using DeltaFormulaPtr = std::shared_ptr<const DeltaFormula>;

struct DeltaFormula {
  enum class Kind { True, False, Eq, Leq, Not, And, Or, Exists, Forall };
  Kind kind = Kind::True;
  DeltaPtr lhs, rhs;       // Eq, Leq
  DeltaFormulaPtr a, b;    // Not: a; And/Or: a, b; quantifiers: body in a
  std::string var;         // quantifiers: var < bound
  DeltaPtr bound;
};

namespace delta {

inline DeltaFormulaPtr formula(DeltaFormula f) { return std::make_shared<const DeltaFormula>(std::move(f)); }
inline DeltaFormulaPtr truth(bool v) {
  DeltaFormula f;
  f.kind = v ? DeltaFormula::Kind::True : DeltaFormula::Kind::False;
  return formula(std::move(f));
}
inline DeltaFormulaPtr atom(DeltaFormula::Kind k, DeltaPtr l, DeltaPtr r) {
  DeltaFormula f;
  f.kind = k;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return formula(std::move(f));
}
inline DeltaFormulaPtr eq(DeltaPtr l, DeltaPtr r) { return atom(DeltaFormula::Kind::Eq, std::move(l), std::move(r)); }
inline DeltaFormulaPtr leq(DeltaPtr l, DeltaPtr r) { return atom(DeltaFormula::Kind::Leq, std::move(l), std::move(r)); }
inline DeltaFormulaPtr connective(DeltaFormula::Kind k, DeltaFormulaPtr a, DeltaFormulaPtr b = nullptr) {
  DeltaFormula f;
  f.kind = k;
  f.a = std::move(a);
  f.b = std::move(b);
  return formula(std::move(f));
}
inline DeltaFormulaPtr not_(DeltaFormulaPtr a) { return connective(DeltaFormula::Kind::Not, std::move(a)); }
inline DeltaFormulaPtr and_(DeltaFormulaPtr a, DeltaFormulaPtr b) {
  return connective(DeltaFormula::Kind::And, std::move(a), std::move(b));
}
inline DeltaFormulaPtr or_(DeltaFormulaPtr a, DeltaFormulaPtr b) {
  return connective(DeltaFormula::Kind::Or, std::move(a), std::move(b));
}
inline DeltaFormulaPtr quant(DeltaFormula::Kind k, std::string v, DeltaPtr bound, DeltaFormulaPtr body) {
  DeltaFormula f;
  f.kind = k;
  f.var = std::move(v);
  f.bound = std::move(bound);
  f.a = std::move(body);
  return formula(std::move(f));
}

}  // namespace delta

// Quantifier bounds are limited to this many values.
inline constexpr Nat kMaxQuantifierRange = Nat{1} << 20;

inline bool eval_delta(const DeltaFormulaPtr& f, const DeltaEnv& env) {
  using K = DeltaFormula::Kind;
  switch (f->kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Eq: return eval_delta(f->lhs, env) == eval_delta(f->rhs, env);
    case K::Leq: return eval_delta(f->lhs, env) <= eval_delta(f->rhs, env);
    case K::Not: return !eval_delta(f->a, env);
    case K::And: return eval_delta(f->a, env) && eval_delta(f->b, env);
    case K::Or: return eval_delta(f->a, env) || eval_delta(f->b, env);
    case K::Exists:
    case K::Forall: {
      const bool want = f->kind == K::Exists;
      const BigNat t = eval_delta(f->bound, env);
      if (t > BigNat(kMaxQuantifierRange)) throw DomainError("quantifier bound too large to enumerate");
      DeltaEnv inner = env;
      for (Nat z = 0; z < static_cast<Nat>(t); ++z) {
        inner[f->var] = z;
        if (eval_delta(f->a, inner) == want) return want;
      }
      return !want;
    }
  }
  return false;
}

inline std::string to_string(const DeltaFormulaPtr& f) {
  using K = DeltaFormula::Kind;
  switch (f->kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Eq: return to_string(f->lhs) + " = " + to_string(f->rhs);
    case K::Leq: return to_string(f->lhs) + " <= " + to_string(f->rhs);
    case K::Not: return "!(" + to_string(f->a) + ")";
    case K::And: return "(" + to_string(f->a) + " & " + to_string(f->b) + ")";
    case K::Or: return "(" + to_string(f->a) + " | " + to_string(f->b) + ")";
    case K::Exists:
    case K::Forall:
      return std::string(f->kind == K::Exists ? "E " : "A ") + f->var + "<" + to_string(f->bound) + " : (" +
             to_string(f->a) + ")";
  }
  return "?";
}

// Text syntax: function-style MSP(x,i), smash(x,y), monus(x,y), half(x),
// len(x), bit(i,x), mod2(x), S(x); infix + * #; decimal literals.
// Formulas add = <= < ! & | -> and E v<t : / A v<t : quantifiers.
class DeltaParser {
 public:
  explicit DeltaParser(std::string_view text) : s_(text) {}

  DeltaPtr term_only() {
    DeltaPtr t = term();
    end();
    return t;
  }
  DeltaFormulaPtr formula_only() {
    DeltaFormulaPtr f = formula();
    end();
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  void end() {
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(s_[start]))) fail("expected an identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  DeltaFormulaPtr formula() {
    DeltaFormulaPtr f = disjunction();
    if (eat("->")) return delta::or_(delta::not_(f), formula());
    return f;
  }
  DeltaFormulaPtr disjunction() {
    DeltaFormulaPtr f = conjunction();
    while (eat("|")) f = delta::or_(f, conjunction());
    return f;
  }
  DeltaFormulaPtr conjunction() {
    DeltaFormulaPtr f = unary();
    while (eat("&")) f = delta::and_(f, unary());
    return f;
  }
  DeltaFormulaPtr unary() {
    skip();
    if (eat("!")) return delta::not_(unary());
    const std::size_t save = pos_;
    if (eat("true")) return delta::truth(true);
    if (eat("false")) return delta::truth(false);
    for (auto [word, kind] : {std::pair{"E", DeltaFormula::Kind::Exists}, std::pair{"A", DeltaFormula::Kind::Forall}}) {
      if (eat(word) && pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        std::string v = ident();
        expect("<");
        DeltaPtr bound = term();
        eat(":");
        return delta::quant(kind, v, bound, formula());
      }
      pos_ = save;
    }
    if (eat("(")) {
      // Either a parenthesized formula or the start of a term.
      try {
        DeltaFormulaPtr f = formula();
        expect(")");
        skip();
        if (pos_ < s_.size() && std::string_view("+*#=<").find(s_[pos_]) != std::string_view::npos) throw ParseError("", 1, 1);
        return f;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    DeltaPtr l = term();
    if (eat("<=")) return delta::leq(l, term());
    if (eat("<")) return delta::leq(delta::succ(l), term());
    if (eat("=")) return delta::eq(l, term());
    fail("expected a comparison");
  }

  DeltaPtr term() {
    DeltaPtr t = product();
    while (eat("+")) t = delta::add(t, product());
    return t;
  }
  DeltaPtr product() {
    DeltaPtr t = smash_term();
    while (eat("*")) t = delta::mul(t, smash_term());
    return t;
  }
  DeltaPtr smash_term() {
    DeltaPtr t = atom();
    while (eat("#")) t = delta::smash(t, atom());
    return t;
  }
  DeltaPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat("(")) {
      DeltaPtr t = term();
      expect(")");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return delta::lit(BigNat(std::string(s_.substr(start, pos_ - start))));
    }
    const std::string name = ident();
    if (!eat("(")) return delta::var(name);
    std::vector<DeltaPtr> args{term()};
    while (eat(",")) args.push_back(term());
    expect(")");
    auto arity = [&](std::size_t n) {
      if (args.size() != n) fail(name + " takes " + std::to_string(n) + " argument(s)");
    };
    if (name == "S") return arity(1), delta::succ(args[0]);
    if (name == "half") return arity(1), delta::half(args[0]);
    if (name == "len") return arity(1), delta::len(args[0]);
    if (name == "mod2") return arity(1), delta::mod2(args[0]);
    if (name == "smash") return arity(2), delta::smash(args[0], args[1]);
    if (name == "monus") return arity(2), delta::monus(args[0], args[1]);
    if (name == "MSP") return arity(2), delta::msp(args[0], args[1]);
    if (name == "bit" || name == "BIT") return arity(2), delta::bit(args[0], args[1]);
    fail("unknown function '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline DeltaPtr parse_delta(std::string_view text) { return DeltaParser(text).term_only(); }
inline DeltaFormulaPtr parse_delta_formula(std::string_view text) { return DeltaParser(text).formula_only(); }

// The unique x < 2^|a| whose bit i is pred(i) for every i < |a|.
inline BigNat bit_comprehension(const std::function<bool(Nat)>& pred, const BigNat& a) {
  BigNat x = 0;
  for (Nat i = bin_len(a); i-- > 0;) {
    x <<= 1;
    if (pred(i)) x += 1;
  }
  return x;
}

// Open induction on the length of z, run step by step.
struct LindTrace {
  bool base = false;                  // phi(0)
  std::optional<Nat> broken_step;     // least x + 1 with phi(x) & !phi(x + 1), x < |z|
  bool conclusion = false;            // phi(|z|)
  bool held() const { return base && !broken_step && conclusion; }
};

inline LindTrace open_lind_check(const DeltaFormulaPtr& phi, const std::string& var, const BigNat& z, DeltaEnv env) {
  auto at = [&](Nat x) {
    env[var] = x;
    return eval_delta(phi, env);
  };
  LindTrace t;
  const Nat n = bin_len(z);
  bool prev = t.base = at(0);
  for (Nat x = 0; x < n; ++x) {
    const bool next = at(x + 1);
    if (prev && !next && !t.broken_step) t.broken_step = x + 1;
    prev = next;
  }
  t.conclusion = at(n);
  return t;
}

}  // namespace tcforge::rsuv
