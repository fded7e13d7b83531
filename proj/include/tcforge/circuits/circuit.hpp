#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/bitset.hpp"
#include "tcforge/kernel/text.hpp"

namespace tcforge::circuits {

using GateId = Nat;

enum class Op { In, True, False, Not, And, Or, Th };

inline std::string_view op_name(Op op) {
  switch (op) {
    case Op::In: return "IN";
    case Op::True: return "T";
    case Op::False: return "F";
    case Op::Not: return "NOT";
    case Op::And: return "AND";
    case Op::Or: return "OR";
    case Op::Th: return "TH";
  }
  return "?";
}

inline Op op_from_name(std::string_view s) {
  for (Op op : {Op::In, Op::True, Op::False, Op::Not, Op::And, Op::Or, Op::Th})
    if (op_name(op) == s) return op;
  throw DomainError("unknown gate op '" + std::string(s) + "'");
}

struct Gate {
  Op op = Op::False;
  Nat k = 0;                  // Th: at least k children true
  std::vector<GateId> args;   // Not: one child
  std::string var;            // In
  Nat bit = 0;                // In

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class InputKind { String, Unary };

// A string input of width w uses bits 0..w-1. A unary number input of
// width w encodes x <= w as bits 0..x-1 set.
struct InputDecl {
  std::string name;
  Nat width = 0;
  InputKind kind = InputKind::String;

  friend bool operator==(const InputDecl&, const InputDecl&) = default;
};

using InputLayout = std::vector<InputDecl>;

// "X:4,x:3": upper-case names are strings, lower-case names unary numbers.
inline InputLayout parse_layout(std::string_view text) {
  InputLayout out;
  for (std::string_view part : text_detail::split_top(text, ',')) {
    part = text_detail::trim(part);
    if (part.empty()) continue;
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) throw ParseError("layout entry needs name:width", 1, 1);
    std::string name(text_detail::trim(part.substr(0, colon)));
    if (name.empty()) throw ParseError("layout entry needs a name", 1, 1);
    const Nat width = text_detail::parse_decimal(text_detail::trim(part.substr(colon + 1)), colon + 2);
    const bool upper = std::isupper(static_cast<unsigned char>(name[0]));
    out.push_back(InputDecl{name, width, upper ? InputKind::String : InputKind::Unary});
  }
  return out;
}

inline const InputDecl* find_input(const InputLayout& layout, std::string_view name) {
  for (const auto& d : layout)
    if (d.name == name) return &d;
  return nullptr;
}

struct Metrics {
  Nat depth = 0;
  Nat size = 0;
  Nat wires = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// Immutable DAG of unbounded fan-in gates; every child id is smaller than its
// parent's id.
class Circuit {
 public:
  Circuit(InputLayout inputs, std::vector<Gate> gates, std::vector<GateId> outputs)
      : inputs_(std::move(inputs)), gates_(std::move(gates)), outputs_(std::move(outputs)) {
    validate();
    metrics_ = compute_metrics();
  }

  const InputLayout& inputs() const { return inputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<GateId>& outputs() const { return outputs_; }
  const Metrics& metrics() const { return metrics_; }

  // Depth counts every non-input, non-constant gate as one level.
  Metrics compute_metrics() const {
    std::vector<Nat> depth(gates_.size(), 0);
    Metrics m;
    m.size = gates_.size();
    for (GateId g = 0; g < gates_.size(); ++g) {
      const Gate& gate = gates_[g];
      m.wires += gate.args.size();
      if (gate.op == Op::In || gate.op == Op::True || gate.op == Op::False) continue;
      Nat d = 0;
      for (GateId c : gate.args) d = std::max(d, depth[c]);
      depth[g] = d + 1;
    }
    for (GateId o : outputs_) m.depth = std::max(m.depth, depth[o]);
    return m;
  }

  // Number of gates of each op.
  std::map<Op, Nat> census() const {
    std::map<Op, Nat> out;
    for (const auto& g : gates_) ++out[g.op];
    return out;
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.inputs_ == b.inputs_ && a.gates_ == b.gates_ && a.outputs_ == b.outputs_;
  }

 private:
  void validate() const {
    if (outputs_.empty()) throw DomainError("circuit has no outputs");
    for (GateId g = 0; g < gates_.size(); ++g) {
      const Gate& gate = gates_[g];
      for (GateId c : gate.args)
        if (c >= g) throw DomainError("gate " + std::to_string(g) + " reads gate " + std::to_string(c) + " out of order");
      switch (gate.op) {
        case Op::In: {
          if (!gate.args.empty()) throw DomainError("input gate with children");
          const InputDecl* d = find_input(inputs_, gate.var);
          if (!d) throw DomainError("input gate for undeclared variable '" + gate.var + "'");
          if (gate.bit >= d->width) throw DomainError("input " + gate.var + "[" + std::to_string(gate.bit) + "] beyond width");
          break;
        }
        case Op::True:
        case Op::False:
          if (!gate.args.empty()) throw DomainError("constant gate with children");
          break;
        case Op::Not:
          if (gate.args.size() != 1) throw DomainError("NOT gate needs exactly one child");
          break;
        case Op::Th:
          if (gate.k > gate.args.size() + 1) throw DomainError("threshold above fan-in + 1");
          break;
        default: break;
      }
    }
    for (GateId o : outputs_)
      if (o >= gates_.size()) throw DomainError("output refers to missing gate " + std::to_string(o));
  }

  InputLayout inputs_;
  std::vector<Gate> gates_;
  std::vector<GateId> outputs_;
  Metrics metrics_;
};

// Values for the declared inputs: sets for string inputs, naturals for unary.
using InputValue = std::variant<BitSet, Nat>;
using InputValues = std::map<std::string, InputValue>;

inline std::vector<bool> evaluate(const Circuit& c, const InputValues& values) {
  std::map<std::string, BitSet> bits;
  for (const auto& d : c.inputs()) {
    auto it = values.find(d.name);
    if (it == values.end()) throw DomainError("no value for input '" + d.name + "'");
    if (d.kind == InputKind::String) {
      const BitSet* s = std::get_if<BitSet>(&it->second);
      if (!s) throw DomainError("input '" + d.name + "' expects a set");
      if (s->length() > d.width) throw DomainError("input '" + d.name + "' exceeds its width " + std::to_string(d.width));
      bits[d.name] = *s;
    } else {
      const Nat* x = std::get_if<Nat>(&it->second);
      if (!x) throw DomainError("input '" + d.name + "' expects a number");
      if (*x > d.width) throw DomainError("input '" + d.name + "' exceeds its width " + std::to_string(d.width));
      bits[d.name] = BitSet::interval(0, *x);
    }
  }
  for (const auto& [name, v] : values)
    if (!find_input(c.inputs(), name)) throw DomainError("value for undeclared input '" + name + "'");

  const auto& gates = c.gates();
  std::vector<char> val(gates.size(), 0);
  for (GateId g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    switch (gate.op) {
      case Op::In: val[g] = bits[gate.var](gate.bit); break;
      case Op::True: val[g] = 1; break;
      case Op::False: val[g] = 0; break;
      case Op::Not: val[g] = !val[gate.args[0]]; break;
      case Op::And: {
        char v = 1;
        for (GateId a : gate.args) v = v && val[a];
        val[g] = v;
        break;
      }
      case Op::Or: {
        char v = 0;
        for (GateId a : gate.args) v = v || val[a];
        val[g] = v;
        break;
      }
      case Op::Th: {
        Nat ones = 0;
        for (GateId a : gate.args) ones += val[a] ? 1 : 0;
        val[g] = ones >= gate.k;
        break;
      }
    }
  }
  std::vector<bool> out;
  for (GateId o : c.outputs()) out.push_back(val[o]);
  return out;
}

// Builds circuits gate by gate, sharing structurally equal gates. With
// folding on, constants are propagated and one-child AND/OR collapse; with it
// off every requested gate is kept, so depth follows the construction exactly.
// Inputs are created on first use.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(InputLayout layout, bool fold = true) : layout_(std::move(layout)), fold_(fold) {}

  const InputLayout& layout() const { return layout_; }

  GateId constant(bool v) { return intern(Gate{v ? Op::True : Op::False, 0, {}, {}, 0}); }
  GateId truth() { return constant(true); }
  GateId falsity() { return constant(false); }

  GateId input(const std::string& var, Nat bit) {
    const InputDecl* d = find_input(layout_, var);
    if (!d) throw DomainError("variable '" + var + "' missing from the input layout");
    if (bit >= d->width) return falsity();
    return intern(Gate{Op::In, 0, {}, var, bit});
  }

  bool is_const(GateId g, bool v) const { return gates_[g].op == (v ? Op::True : Op::False); }
  const Gate& gate(GateId g) const { return gates_[g]; }
  Nat size() const { return gates_.size(); }

  GateId not_(GateId a) {
    if (!fold_) return intern(Gate{Op::Not, 0, {a}, {}, 0});
    if (is_const(a, true)) return falsity();
    if (is_const(a, false)) return truth();
    if (gates_[a].op == Op::Not) return gates_[a].args[0];
    return intern(Gate{Op::Not, 0, {a}, {}, 0});
  }

  GateId and_(std::vector<GateId> args) { return junction(Op::And, std::move(args)); }
  GateId or_(std::vector<GateId> args) { return junction(Op::Or, std::move(args)); }
  GateId and_(GateId a, GateId b) { return and_(std::vector<GateId>{a, b}); }
  GateId or_(GateId a, GateId b) { return or_(std::vector<GateId>{a, b}); }

  GateId xor_(GateId a, GateId b) { return and_(or_(a, b), not_(and_(a, b))); }
  GateId iff(GateId a, GateId b) { return not_(xor_(a, b)); }

  // At least k of args; children keep their multiplicity.
  GateId threshold(Nat k, std::vector<GateId> args) {
    if (!fold_) {
      if (k > args.size() + 1) throw DomainError("threshold above fan-in + 1");
      std::sort(args.begin(), args.end());
      return intern(Gate{Op::Th, k, std::move(args), {}, 0});
    }
    std::vector<GateId> live;
    for (GateId a : args) {
      if (is_const(a, true)) {
        if (k > 0) --k;
      } else if (!is_const(a, false)) {
        live.push_back(a);
      }
    }
    if (k == 0) return truth();
    if (k > live.size()) return falsity();
    if (k == 1) return or_(std::move(live));
    if (k == live.size()) return and_(std::move(live));
    std::sort(live.begin(), live.end());
    return intern(Gate{Op::Th, k, std::move(live), {}, 0});
  }

  // Raw gate, bypassing folding (used by import and lowering passes).
  GateId raw(Gate g) {
    gates_.push_back(std::move(g));
    return gates_.size() - 1;
  }

  // Keeps only the gates the outputs depend on, in their original order.
  Circuit build(const std::vector<GateId>& outputs) const {
    std::vector<char> live(gates_.size(), 0);
    for (GateId o : outputs) live.at(o) = 1;
    for (GateId g = gates_.size(); g-- > 0;)
      if (live[g])
        for (GateId a : gates_[g].args) live[a] = 1;
    std::vector<GateId> id_of(gates_.size());
    std::vector<Gate> kept;
    for (GateId g = 0; g < gates_.size(); ++g) {
      if (!live[g]) continue;
      Gate copy = gates_[g];
      for (auto& a : copy.args) a = id_of[a];
      id_of[g] = kept.size();
      kept.push_back(std::move(copy));
    }
    std::vector<GateId> outs;
    for (GateId o : outputs) outs.push_back(id_of[o]);
    return Circuit(layout_, std::move(kept), std::move(outs));
  }

 private:
  GateId junction(Op op, std::vector<GateId> args) {
    if (!fold_) {
      std::sort(args.begin(), args.end());
      args.erase(std::unique(args.begin(), args.end()), args.end());
      return intern(Gate{op, 0, std::move(args), {}, 0});
    }
    const bool unit = op == Op::And;  // And: true is the unit, false absorbs
    std::vector<GateId> live;
    for (GateId a : args) {
      if (is_const(a, unit)) continue;
      if (is_const(a, !unit)) return constant(!unit);
      live.push_back(a);
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    if (live.empty()) return constant(unit);
    if (live.size() == 1) return live[0];
    return intern(Gate{op, 0, std::move(live), {}, 0});
  }

  GateId intern(Gate g) {
    auto key = std::make_tuple(g.op, g.k, g.args, g.var, g.bit);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    gates_.push_back(std::move(g));
    index_.emplace(std::move(key), gates_.size() - 1);
    return gates_.size() - 1;
  }

  InputLayout layout_;
  bool fold_ = true;
  std::vector<Gate> gates_;
  std::map<std::tuple<Op, Nat, std::vector<GateId>, std::string, Nat>, GateId> index_;
};

}  // namespace tcforge::circuits
