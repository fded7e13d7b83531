#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/logic/registry.hpp"

namespace tcforge::logic {

// Surface syntax
//
//   formula  := imp
//   imp      := disj [("->" | "<->") imp]
//   disj     := conj {"|" conj}
//   conj     := unary {"&" unary}
//   unary    := "!" unary | quant | "(" formula ")" | atom
//   quant    := ("E"|"A") numvar ("<"|"<=") term [":"] formula
//             | ("E"|"A") strvar "<=" term [":"] formula
//             | ("Th"|"Count") "[" term "]" numvar "<" term [":"] formula
//             | "Mod" "[" int "]" numvar "<" term [":"] formula
//   atom     := "true" | "false" | term relop term | set "(" term {"," term} ")"
//             | set ("=" | "!=") set
//   relop    := "=" | "!=" | "<=" | "<" | ">=" | ">"
//   term     := prod {"+" prod} ;  prod := primary {"*" primary}
//   primary  := int | numvar | "|" set "|" | "(" term ")" | fn "(" args ")" | "pair(" term "," term ")"
//   set      := strvar | strfn "(" args ")"
//
// Number variables start lowercase, string variables uppercase. E, A, Th,
// Mod and Count are reserved. X(s,t) abbreviates X(pair(s,t)). Count[s] is
// Th[s] & !Th[s+1]. Arguments may be separated by ',' or ';' with number
// arguments first.

namespace parse_detail {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Nat value = 0;
  std::size_t line = 1, column = 1;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* kMulti[] = {"<->", "->", "<=", ">=", "!=", ":="};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      Nat v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        Nat d = static_cast<Nat>(src[j] - '0');
        if (v > (UINT64_MAX - d) / 10) throw ParseError("numeral too large", line, col);
        v = v * 10 + d;
        ++j;
      }
      t.kind = Token::Kind::Number;
      t.value = v;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      t.kind = Token::Kind::Punct;
      bool matched = false;
      for (const char* m : kMulti) {
        std::string_view mv(m);
        if (src.substr(i, mv.size()) == mv) {
          t.text = std::string(mv);
          advance(mv.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        static const std::string_view kSingle = "&|!()[],;:=<>+*{}";
        if (kSingle.find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

inline bool is_reserved(const std::string& s) {
  return s == "E" || s == "A" || s == "Th" || s == "Mod" || s == "Count" || s == "true" || s == "false" ||
         s == "min" || s == "graph";
}

inline bool upper_initial(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

}  // namespace parse_detail

class Parser {
 public:
  Parser(std::string_view text, const FunctionRegistry& registry) : reg_(registry), toks_(parse_detail::lex(text)) {
    for (const auto& t : toks_)
      if (t.kind == parse_detail::Token::Kind::Ident) names_.reserve(t.text);
  }

  FormulaPtr formula_only() {
    FormulaPtr f = formula();
    expect_end();
    return f;
  }

  TermPtr term_only() {
    TermPtr t = term();
    expect_end();
    return t;
  }

  FunctionDef definition_only();

 private:
  using Token = parse_detail::Token;
  using TK = Token::Kind;

  struct Scope {
    std::string original;
    std::string renamed;
    bool is_string;
  };

  struct State {
    std::size_t pos;
    std::size_t scope_size;
    NameSupply names;
  };

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TK::Punct && t.text == p;
  }
  bool at_ident(std::string_view s) const { return peek().kind == TK::Ident && peek().text == s; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg + (at.kind == TK::End ? " at end of input" : " near '" + at.text + "'"), at.line, at.column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

  void expect(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != TK::End) fail("unexpected trailing input");
  }

  State save() const { return State{pos_, scopes_.size(), names_}; }
  void restore(const State& s) {
    pos_ = s.pos;
    scopes_.resize(s.scope_size);
    names_ = s.names;
  }

  std::string resolve(const std::string& name, bool is_string) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->original == name && it->is_string == is_string) return it->renamed;
    return name;
  }
  bool in_scope(const std::string& name, bool is_string) const {
    for (const auto& s : scopes_)
      if (s.original == name && s.is_string == is_string) return true;
    return false;
  }
  // Binds `name`, renaming if an enclosing binder already uses it.
  std::string bind(const std::string& name, bool is_string) {
    std::string renamed = in_scope(name, is_string) ? names_.fresh(name) : name;
    scopes_.push_back(Scope{name, renamed, is_string});
    return renamed;
  }
  void unbind() { scopes_.pop_back(); }

  bool is_str_fn(const std::string& name) const {
    const FunctionDef* d = reg_.find(name);
    return d && d->sort == Sort::String;
  }
  bool is_num_fn(const std::string& name) const {
    const FunctionDef* d = reg_.find(name);
    return d && d->sort == Sort::Number;
  }
  bool starts_set() const {
    const Token& t = peek();
    if (t.kind != TK::Ident || parse_detail::is_reserved(t.text)) return false;
    if (is_str_fn(t.text) && at_punct("(", 1)) return true;
    return parse_detail::upper_initial(t.text) && !(is_num_fn(t.text) && at_punct("(", 1));
  }

  // ---- formulas

  FormulaPtr formula() {
    FormulaPtr lhs = disj();
    if (at_punct("->")) {
      ++pos_;
      return ast::implies(lhs, formula());
    }
    if (at_punct("<->")) {
      ++pos_;
      return ast::iff(lhs, formula());
    }
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (at_punct("|")) {
      ++pos_;
      f = ast::or_(f, conj());
    }
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (at_punct("&")) {
      ++pos_;
      f = ast::and_(f, unary());
    }
    return f;
  }

  FormulaPtr unary() {
    if (at_punct("!")) {
      ++pos_;
      return ast::not_(unary());
    }
    const Token& t = peek();
    if (t.kind == TK::Ident) {
      if (t.text == "E" || t.text == "A") return quantifier();
      if (t.text == "Th" || t.text == "Mod" || t.text == "Count") return counting_quantifier();
      if (t.text == "true") {
        ++pos_;
        return ast::truth(true);
      }
      if (t.text == "false") {
        ++pos_;
        return ast::truth(false);
      }
    }
    if (at_punct("(")) {
      // Either a parenthesized formula or a term starting with '('.
      State st = save();
      std::optional<ParseError> formula_error;
      try {
        ++pos_;
        FormulaPtr f = formula();
        expect(")");
        if (!at_relop() && !at_punct("+") && !at_punct("*")) return f;
      } catch (const ParseError& e) {
        formula_error = e;
      }
      std::size_t formula_reach = pos_;
      restore(st);
      try {
        return relation();
      } catch (const ParseError&) {
        if (formula_error && formula_reach >= pos_) throw *formula_error;
        throw;
      }
    }
    return atom();
  }

  bool at_relop() const {
    return at_punct("=") || at_punct("!=") || at_punct("<=") || at_punct("<") || at_punct(">=") || at_punct(">");
  }

  FormulaPtr atom() {
    if (starts_set()) {
      StrPtr s = set_term();
      if (at_punct("(")) {
        ++pos_;
        std::vector<TermPtr> idx{term()};
        while (at_punct(",")) {
          ++pos_;
          idx.push_back(term());
        }
        expect(")");
        TermPtr code = idx[0];
        for (std::size_t k = 1; k < idx.size(); ++k) code = ast::pair(code, idx[k]);
        return ast::in(code, s);
      }
      if (at_punct("=")) {
        ++pos_;
        return ast::str_eq(s, set_term());
      }
      if (at_punct("!=")) {
        ++pos_;
        return ast::not_(ast::str_eq(s, set_term()));
      }
      fail("expected membership '(' or '=' after string term");
    }
    return relation();
  }

  FormulaPtr relation() {
    TermPtr l = term();
    const Token op = peek();
    if (!at_relop()) fail("expected a comparison");
    ++pos_;
    TermPtr r = term();
    if (op.text == "=") return ast::eq(l, r);
    if (op.text == "!=") return ast::not_(ast::eq(l, r));
    if (op.text == "<=") return ast::leq(l, r);
    if (op.text == "<") return ast::lt(l, r);
    if (op.text == ">=") return ast::leq(r, l);
    return ast::lt(r, l);
  }

  void optional_colon() {
    if (at_punct(":")) ++pos_;
  }

  FormulaPtr quantifier() {
    const bool exists = next().text == "E";
    const Token& v = peek();
    if (v.kind != TK::Ident || parse_detail::is_reserved(v.text)) fail("expected a variable after quantifier");
    std::string name = v.text;
    ++pos_;
    const bool is_string = parse_detail::upper_initial(name);
    TermPtr bound;
    if (is_string) {
      if (!at_punct("<=")) fail("string quantifier needs '<=' bound");
      ++pos_;
      bound = bound_term();
    } else if (at_punct("<")) {
      ++pos_;
      bound = bound_term();
    } else if (at_punct("<=")) {
      ++pos_;
      bound = ast::succ(bound_term());
    } else {
      fail("number quantifier needs a '<' bound");
    }
    optional_colon();
    std::string renamed = bind(name, is_string);
    FormulaPtr body = formula();
    unbind();
    using K = Formula::Kind;
    K kind = is_string ? (exists ? K::ExistsStr : K::ForallStr) : (exists ? K::ExistsNum : K::ForallNum);
    return ast::quant(kind, renamed, bound, body);
  }

  TermPtr bound_term() {
    const Token at = peek();
    TermPtr t = term();
    if (!is_base(t)) fail("quantifier bounds must use only 0, 1, +, * and |X|", at);
    return t;
  }

  FormulaPtr counting_quantifier() {
    const std::string kw = next().text;
    expect("[");
    TermPtr count;
    Nat modulus = 0;
    const Token count_at = peek();
    if (kw == "Mod") {
      if (peek().kind != TK::Number) fail("Mod[...] needs an integer modulus");
      modulus = next().value;
      if (modulus < 2) fail("modulus must be at least 2", count_at);
    } else {
      count = bound_term();
    }
    expect("]");
    const Token& v = peek();
    if (v.kind != TK::Ident || parse_detail::is_reserved(v.text) || parse_detail::upper_initial(v.text))
      fail("counting quantifier needs a number variable");
    std::string name = v.text;
    ++pos_;
    if (!at_punct("<")) fail("counting quantifier needs a '<' bound");
    ++pos_;
    TermPtr bound = bound_term();
    if (count && (mentions_var(count, name) || mentions_var(count, resolve(name, false))))
      fail("threshold term must not mention the bound variable", count_at);
    optional_colon();
    std::string renamed = bind(name, false);
    FormulaPtr body = formula();
    unbind();
    if (kw == "Mod") return ast::modm(modulus, renamed, bound, body);
    if (kw == "Th") return ast::thq(count, renamed, bound, body);
    // Count[s]: exactly s witnesses.
    return ast::and_(ast::thq(count, renamed, bound, body), ast::not_(ast::thq(ast::succ(count), renamed, bound, body)));
  }

  // ---- terms

  TermPtr term() {
    TermPtr t = product();
    while (at_punct("+")) {
      ++pos_;
      t = ast::add(t, product());
    }
    return t;
  }

  TermPtr product() {
    TermPtr t = primary();
    while (at_punct("*")) {
      ++pos_;
      t = ast::mul(t, primary());
    }
    return t;
  }

  TermPtr primary() {
    const Token& t = peek();
    if (t.kind == TK::Number) {
      ++pos_;
      return ast::lit(t.value);
    }
    if (at_punct("(")) {
      ++pos_;
      TermPtr inner = term();
      expect(")");
      return inner;
    }
    if (at_punct("|")) {
      ++pos_;
      StrPtr s = set_term();
      expect("|");
      return ast::len(s);
    }
    if (t.kind == TK::Ident && !parse_detail::is_reserved(t.text)) {
      std::string name = t.text;
      if (at_punct("(", 1)) {
        if (name == "pair" && !reg_.contains("pair")) {
          pos_ += 2;
          TermPtr x = term();
          expect(",");
          TermPtr y = term();
          expect(")");
          return ast::pair(x, y);
        }
        const FunctionDef* d = reg_.find(name);
        if (!d) fail("unknown function symbol '" + name + "'");
        if (d->sort != Sort::Number) fail("'" + name + "' is a string function, not a number term");
        ++pos_;
        auto [nums, strs] = arguments(*d);
        return ast::app(name, std::move(nums), std::move(strs));
      }
      if (parse_detail::upper_initial(name)) fail("string variable '" + name + "' used as a number");
      ++pos_;
      return ast::var(resolve(name, false));
    }
    fail("expected a number term");
  }

  StrPtr set_term() {
    const Token& t = peek();
    if (t.kind != TK::Ident || parse_detail::is_reserved(t.text)) fail("expected a string term");
    std::string name = t.text;
    if (is_str_fn(name) && at_punct("(", 1)) {
      ++pos_;
      auto [nums, strs] = arguments(reg_.at(name));
      return ast::sapp(name, std::move(nums), std::move(strs));
    }
    if (!parse_detail::upper_initial(name)) fail("expected a string variable (uppercase initial)");
    ++pos_;
    return ast::svar(resolve(name, true));
  }

  std::pair<std::vector<TermPtr>, std::vector<StrPtr>> arguments(const FunctionDef& d) {
    const Token at = peek();
    expect("(");
    std::vector<TermPtr> nums;
    std::vector<StrPtr> strs;
    if (!at_punct(")")) {
      while (true) {
        if (starts_set()) {
          strs.push_back(set_term());
        } else {
          if (!strs.empty()) fail("number arguments must precede string arguments");
          nums.push_back(term());
        }
        if (at_punct(",") || at_punct(";")) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(")");
    if (nums.size() != d.num_arity() || strs.size() != d.str_arity())
      fail("'" + d.name + "' expects " + std::to_string(d.num_arity()) + " number and " +
               std::to_string(d.str_arity()) + " string arguments",
           at);
    return {std::move(nums), std::move(strs)};
  }

  const FunctionRegistry& reg_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Scope> scopes_;
  NameSupply names_;
};

// NAME(params) := { z < t : body }     string function
// name(params) := min z < t : body     least witness below t, else t
// name(params) := graph y <= t : body  number function given by its graph
inline FunctionDef Parser::definition_only() {
  FunctionDef d;
  const Token& head = peek();
  if (head.kind != TK::Ident || parse_detail::is_reserved(head.text)) fail("expected a function name");
  d.name = head.text;
  ++pos_;
  expect("(");
  if (!at_punct(")")) {
    while (true) {
      const Token& p = peek();
      if (p.kind != TK::Ident || parse_detail::is_reserved(p.text)) fail("expected a parameter name");
      if (parse_detail::upper_initial(p.text)) {
        d.str_params.push_back(p.text);
      } else {
        if (!d.str_params.empty()) fail("number parameters must precede string parameters");
        d.num_params.push_back(p.text);
      }
      ++pos_;
      if (at_punct(",") || at_punct(";")) {
        ++pos_;
        continue;
      }
      break;
    }
  }
  expect(")");
  expect(":=");
  for (const auto& p : d.num_params) bind(p, false);
  for (const auto& p : d.str_params) bind(p, true);
  auto read_var = [&] {
    const Token& v = peek();
    if (v.kind != TK::Ident || parse_detail::is_reserved(v.text) || parse_detail::upper_initial(v.text))
      fail("expected a number variable");
    ++pos_;
    return v.text;
  };
  if (at_punct("{")) {
    ++pos_;
    d.sort = Sort::String;
    d.var = read_var();
    expect("<");
    d.bound = bound_term();
    expect(":");
    bind(d.var, false);
    d.body = formula();
    expect("}");
  } else if (at_ident("min")) {
    ++pos_;
    d.sort = Sort::Number;
    std::string z = read_var();
    expect("<");
    TermPtr t = bound_term();
    optional_colon();
    bind(z, false);
    FormulaPtr alpha = formula();
    // y <= t & (y < t -> alpha(y)) & A w < y : !alpha(w)
    d.var = names_.fresh("y");
    d.bound = t;
    NameSupply& ns = names_;
    Subst at_y, at_w;
    std::string w = ns.fresh("w");
    at_y.nums[z] = ast::var(d.var);
    at_w.nums[z] = ast::var(w);
    FormulaPtr holds = substitute(alpha, at_y, ns);
    FormulaPtr earlier = ast::forall(w, ast::var(d.var), ast::not_(substitute(alpha, at_w, ns)));
    d.body = ast::and_(ast::implies(ast::lt(ast::var(d.var), t), holds), earlier);
  } else if (at_ident("graph")) {
    ++pos_;
    d.sort = Sort::Number;
    d.var = read_var();
    expect("<=");
    d.bound = bound_term();
    optional_colon();
    bind(d.var, false);
    d.body = formula();
  } else {
    fail("expected '{', 'min' or 'graph' after ':='");
  }
  expect_end();
  return d;
}

inline FormulaPtr parse_formula(std::string_view text, const FunctionRegistry& reg) {
  return Parser(text, reg).formula_only();
}

inline FormulaPtr parse_formula(std::string_view text) {
  static const FunctionRegistry reg = FunctionRegistry::standard();
  return parse_formula(text, reg);
}

inline TermPtr parse_term(std::string_view text, const FunctionRegistry& reg) { return Parser(text, reg).term_only(); }

inline TermPtr parse_term(std::string_view text) {
  static const FunctionRegistry reg = FunctionRegistry::standard();
  return parse_term(text, reg);
}

// Parses a definition and registers it.
inline const FunctionDef& define(FunctionRegistry& reg, std::string_view text) {
  return reg.add(Parser(text, reg).definition_only());
}

}  // namespace tcforge::logic
