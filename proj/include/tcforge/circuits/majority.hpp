#pragma once

#include <optional>
#include <utility>

#include "tcforge/circuits/circuit.hpp"

namespace tcforge::circuits {

// A strict majority gate: true iff more than half of its children are true.
inline bool is_majority(const Gate& g) { return g.op == Op::Th && g.k == g.args.size() / 2 + 1; }

// Padding (true, false) that turns Th(k) over n children into a strict
// majority over n + true + false children.
inline std::pair<Nat, Nat> majority_padding(Nat k, Nat n) {
  std::optional<std::pair<Nat, Nat>> best;
  for (Nat p = 0; p <= n + 2; ++p)
    for (Nat q = 0; q <= n + 2; ++q)
      if (p + k == (n + p + q) / 2 + 1 && (!best || p + q < best->first + best->second)) best = {p, q};
  if (!best) throw DomainError("no majority padding for threshold " + std::to_string(k));
  return *best;
}

// Rewrites every threshold gate as a strict majority gate by padding its
// children with constants. Other gates are copied unchanged.
inline Circuit lower_to_majority(const Circuit& c) {
  std::vector<Gate> gates;
  std::vector<GateId> id_of(c.gates().size());
  std::optional<GateId> t, f;
  auto constant = [&](bool v) {
    auto& slot = v ? t : f;
    if (!slot) {
      gates.push_back(Gate{v ? Op::True : Op::False, 0, {}, {}, 0});
      slot = gates.size() - 1;
    }
    return *slot;
  };
  for (GateId id = 0; id < c.gates().size(); ++id) {
    Gate g = c.gates()[id];
    for (auto& a : g.args) a = id_of[a];
    if (g.op == Op::Th) {
      const auto [p, q] = majority_padding(g.k, g.args.size());
      if (p > 0) g.args.insert(g.args.end(), p, constant(true));
      if (q > 0) g.args.insert(g.args.end(), q, constant(false));
      g.k = g.args.size() / 2 + 1;
    }
    gates.push_back(std::move(g));
    id_of[id] = gates.size() - 1;
  }
  std::vector<GateId> outputs;
  for (GateId o : c.outputs()) outputs.push_back(id_of[o]);
  return Circuit(c.inputs(), std::move(gates), std::move(outputs));
}

}  // namespace tcforge::circuits
