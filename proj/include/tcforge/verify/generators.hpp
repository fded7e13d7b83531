#pragma once

#include <string>
#include <vector>

#include "tcforge/core/rng.hpp"
#include "tcforge/kernel/assignment.hpp"
#include "tcforge/kernel/table2d.hpp"
#include "tcforge/logic/ast.hpp"

namespace tcforge::verify {

inline BitSet random_bitset(Rng& rng, Nat max_len) {
  const Nat len = rng.below(max_len + 1);
  std::vector<BitSet::Word> words((len + 63) / 64);
  for (auto& w : words) w = rng.next();
  if (len % 64) words.back() &= (BitSet::Word{1} << (len % 64)) - 1;
  return BitSet::from_words(std::move(words));
}

// Exactly `len` bits, top bit set (len = 0 gives the empty set).
inline BitSet random_bitset_exact(Rng& rng, Nat len) {
  if (len == 0) return {};
  std::vector<BitSet::Word> words((len + 63) / 64);
  for (auto& w : words) w = rng.next();
  if (len % 64) words.back() &= (BitSet::Word{1} << (len % 64)) - 1;
  words[(len - 1) / 64] |= BitSet::Word{1} << ((len - 1) % 64);
  return BitSet::from_words(std::move(words));
}

inline Table2D random_table(Rng& rng, Nat rows, Nat max_len) {
  std::vector<BitSet> r;
  for (Nat i = 0; i < rows; ++i) r.push_back(random_bitset(rng, max_len));
  return Table2D::from_rows(std::move(r));
}

struct FormulaShape {
  Nat max_depth = 3;
  Nat max_bound = 8;
  std::vector<std::string> strings{"X", "Y"};
  std::vector<std::string> free_nums{"x"};
  bool threshold = true;
  bool modular = true;
  bool counting_atoms = false;  // numones(t, X) inside atoms
};

// Random formulas with every quantifier bound a literal <= max_bound, a
// string length, or an in-scope variable, so values stay below
// max_bound + 1 when string lengths and free numbers are kept that small.
class FormulaGenerator {
 public:
  FormulaGenerator(Rng& rng, FormulaShape shape) : rng_(rng), shape_(std::move(shape)) {}

  logic::FormulaPtr formula() {
    counter_ = 0;
    scope_ = shape_.free_nums;
    return node(shape_.max_depth);
  }

  Assignment assignment() {
    Assignment env;
    for (const auto& s : shape_.strings) env.bind(s, random_bitset(rng_, shape_.max_bound));
    for (const auto& v : shape_.free_nums) env.bind(v, rng_.below(shape_.max_bound + 1));
    return env;
  }

 private:
  logic::TermPtr small_term() {
    using namespace logic::ast;
    switch (rng_.below(shape_.counting_atoms ? 6 : 5)) {
      case 0: return lit(rng_.below(4));
      case 1: return len(svar(pick_string()));
      case 2: return add(var(pick_var()), lit(rng_.below(2)));
      case 5: return app("numones", {bound()}, {svar(pick_string())});
      default: return var(pick_var());
    }
  }

  logic::TermPtr bound() {
    using namespace logic::ast;
    switch (rng_.below(3)) {
      case 0: return lit(rng_.below(shape_.max_bound + 1));
      case 1: return len(svar(pick_string()));
      default: return var(pick_var());
    }
  }

  std::string pick_string() { return shape_.strings[rng_.below(shape_.strings.size())]; }
  std::string pick_var() {
    if (scope_.empty()) return shape_.free_nums.empty() ? "x" : shape_.free_nums[0];
    return scope_[rng_.below(scope_.size())];
  }

  logic::FormulaPtr atom() {
    using namespace logic::ast;
    switch (rng_.below(6)) {
      case 0:
      case 1:
      case 2: return in(small_term(), svar(pick_string()));
      case 3: return eq(small_term(), small_term());
      case 4: return leq(small_term(), small_term());
      default: return truth(rng_.coin());
    }
  }

  logic::FormulaPtr node(Nat depth) {
    using namespace logic::ast;
    if (depth == 0) return atom();
    std::vector<int> kinds{0, 1, 2, 3, 4, 5};
    if (shape_.threshold) kinds.insert(kinds.end(), {6, 6});
    if (shape_.modular) kinds.push_back(7);
    const int kind = kinds[rng_.below(kinds.size())];
    switch (kind) {
      case 0: return atom();
      case 1: return not_(node(depth - 1));
      case 2: return and_(node(depth - 1), node(depth - 1));
      case 3: return or_(node(depth - 1), node(depth - 1));
      default: break;
    }
    logic::TermPtr b = bound();
    logic::TermPtr count = rng_.chance(1, 4) ? var(pick_var()) : lit(rng_.below(4));
    std::string v = "v" + std::to_string(counter_++);
    scope_.push_back(v);
    logic::FormulaPtr body = node(depth - 1);
    scope_.pop_back();
    switch (kind) {
      case 4: return exists(v, b, body);
      case 5: return forall(v, b, body);
      case 6: return thq(count, v, b, body);
      default: return modm(2 + rng_.below(2), v, b, body);
    }
  }

  Rng& rng_;
  FormulaShape shape_;
  std::vector<std::string> scope_;
  Nat counter_ = 0;
};

}  // namespace tcforge::verify
