#pragma once

#include <functional>
#include <map>
#include <optional>

#include "tcforge/core/rng.hpp"
#include "tcforge/subp/gap.hpp"
#include "tcforge/subp/nck.hpp"

// Random graphs and layered circuits, and a top-down circuit evaluator used as
// an oracle for the layer-by-layer one.
namespace tcforge::verify {

// Each edge present with probability num / den.
inline subp::Digraph random_digraph(Rng& rng, Nat a, Nat num, Nat den) {
  subp::Digraph g;
  g.a = a;
  for (Nat j = 0; j < a; ++j)
    for (Nat i = 0; i < a; ++i)
      if (rng.chance(num, den)) g.edges.set(j, i);
  return g;
}

// A well-wired circuit with nck_depth(a, k) layers; gates are listed in a
// shuffled order.
inline subp::LayeredCircuit random_layered(Rng& rng, Nat a, Nat k) {
  subp::LayeredCircuit c;
  c.a = a;
  c.k = k;
  const Nat depth = subp::nck_depth(a, k);
  for (Nat d = 0; d < depth; ++d) {
    subp::Layer layer;
    for (Nat z = 0; z <= a; ++z) layer.gates.push_back(subp::LayerGate{z, rng.below(a + 1), rng.below(a + 1), rng.chance(1, 2)});
    for (Nat i = layer.gates.size(); i > 1; --i) std::swap(layer.gates[i - 1], layer.gates[rng.below(i)]);
    c.layers.push_back(std::move(layer));
  }
  return c;
}

// Output of gate z on layer d, by recursion toward the inputs.
inline bool eval_gate_recursive(const subp::LayeredCircuit& c, const BitSet& x, Nat d, Nat z) {
  std::map<std::pair<Nat, Nat>, bool> memo;
  std::function<bool(Nat, Nat)> go = [&](Nat layer, Nat gate) -> bool {
    if (layer == 0) return gate <= c.a && x(gate);
    if (auto it = memo.find({layer, gate}); it != memo.end()) return it->second;
    std::optional<bool> v;
    for (const auto& g : c.layers[layer - 1].gates)
      if (g.z == gate) {
        const bool l = go(layer - 1, g.x), r = go(layer - 1, g.y);
        v = g.is_and ? (l && r) : (l || r);
        break;
      }
    return memo[{layer, gate}] = v.value();
  };
  return go(d, z);
}

}  // namespace tcforge::verify
