#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tcforge/core/error.hpp"
#include "tcforge/kernel/table2d.hpp"

namespace tcforge::subp {

// Gate multiplexer: AND of q, r when p holds, OR otherwise.
inline bool select(bool p, bool q, bool r) { return (p && (q && r)) || (!p && (q || r)); }

// Gate z on layer d + 1 reads gates x, y of layer d; `is_and` picks the type.
struct LayerGate {
  Nat z = 0, x = 0, y = 0;
  bool is_and = false;
  friend bool operator==(const LayerGate&, const LayerGate&) = default;
};

struct Layer {
  std::vector<LayerGate> gates;
  friend bool operator==(const Layer&, const Layer&) = default;
};

// Every layer has gates 0..a; layers[d] wires layer d + 1 to layer d.
struct LayeredCircuit {
  Nat a = 0;
  Nat k = 1;
  std::vector<Layer> layers;
  friend bool operator==(const LayeredCircuit&, const LayeredCircuit&) = default;
};

// ceil((log2 a)^k), and 0 for a < 2.
inline Nat nck_depth(Nat a, Nat k) {
  if (a < 2) return 0;
  const long double v = std::pow(std::log2(static_cast<long double>(a)), static_cast<long double>(k));
  const long double r = std::round(v);
  if (std::fabs(v - r) < 1e-9L) return static_cast<Nat>(r);
  return static_cast<Nat>(std::ceil(v));
}

// Description of the first wiring fault, or empty if every gate on every
// layer has exactly one pair of inputs.
inline std::string wiring_fault(const LayeredCircuit& c) {
  for (Nat d = 0; d < c.layers.size(); ++d) {
    std::map<Nat, const LayerGate*> seen;
    for (const auto& g : c.layers[d].gates) {
      auto [it, fresh] = seen.emplace(g.z, &g);
      if (!fresh && (it->second->x != g.x || it->second->y != g.y))
        return "gate " + std::to_string(g.z) + " on layer " + std::to_string(d + 1) + " has two input pairs";
    }
    for (Nat z = 0; z <= c.a; ++z)
      if (!seen.count(z)) return "gate " + std::to_string(z) + " on layer " + std::to_string(d + 1) + " has no inputs";
  }
  return {};
}

// Shape errors that no mode tolerates: indices past a, conflicting gate
// types, or a layer count other than nck_depth(a, k).
inline void check_shape(const LayeredCircuit& c) {
  if (c.k == 0) throw DomainError("layered circuit exponent must be at least 1");
  if (c.layers.size() != nck_depth(c.a, c.k))
    throw DomainError("layered circuit with a=" + std::to_string(c.a) + ", k=" + std::to_string(c.k) + " needs " +
                      std::to_string(nck_depth(c.a, c.k)) + " layers, got " + std::to_string(c.layers.size()));
  for (Nat d = 0; d < c.layers.size(); ++d) {
    std::map<Nat, bool> type;
    for (const auto& g : c.layers[d].gates) {
      if (g.x > c.a || g.y > c.a || g.z > c.a)
        throw DomainError("gate index past a=" + std::to_string(c.a) + " on layer " + std::to_string(d + 1));
      auto [it, fresh] = type.emplace(g.z, g.is_and);
      if (!fresh && it->second != g.is_and)
        throw DomainError("gate " + std::to_string(g.z) + " on layer " + std::to_string(d + 1) + " has two types");
    }
  }
}

// Row d of the result is the output of every gate on layer d; row 0 is X cut
// to 0..a. An ill-wired circuit is an error, or in permissive mode satisfies
// the evaluation formula vacuously and yields the empty table.
inline Table2D nck_eval(const LayeredCircuit& c, const BitSet& x, bool permissive = false) {
  check_shape(c);
  if (const std::string fault = wiring_fault(c); !fault.empty()) {
    if (permissive) return {};
    throw DomainError("ill-wired layered circuit: " + fault);
  }
  Table2D z;
  z.set_row(0, x.prefix(c.a + 1));
  for (Nat d = 0; d < c.layers.size(); ++d) {
    BitSet next;
    for (const auto& g : c.layers[d].gates)
      if (select(g.is_and, z(d, g.x), z(d, g.y))) next.insert(g.z);
    z.set_row(d + 1, std::move(next));
  }
  return z;
}

inline nlohmann::json to_json(const LayeredCircuit& c) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : c.layers) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : l.gates) gates.push_back({{"z", g.z}, {"x", g.x}, {"y", g.y}, {"and", g.is_and}});
    layers.push_back({{"gates", gates}});
  }
  return {{"a", c.a}, {"k", c.k}, {"layers", layers}};
}

inline LayeredCircuit layered_from_json(const nlohmann::json& j) {
  try {
    LayeredCircuit c;
    c.a = j.at("a").get<Nat>();
    c.k = j.at("k").get<Nat>();
    for (const auto& l : j.at("layers")) {
      Layer layer;
      for (const auto& g : l.at("gates"))
        layer.gates.push_back({g.at("z").get<Nat>(), g.at("x").get<Nat>(), g.at("y").get<Nat>(), g.at("and").get<bool>()});
      c.layers.push_back(std::move(layer));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("layered circuit JSON: ") + e.what(), 1, 1);
  }
}

inline LayeredCircuit parse_layered(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("layered circuit JSON: ") + e.what(), 1, e.byte);
  }
  return layered_from_json(j);
}

}  // namespace tcforge::subp
