#pragma once

#include <sstream>
#include <string>

#include "json.hpp"

#include "tcforge/circuits/circuit.hpp"

namespace tcforge::circuits {

inline nlohmann::json to_json(const Circuit& c) {
  using nlohmann::json;
  json inputs = json::array();
  for (const auto& d : c.inputs())
    inputs.push_back({{"name", d.name}, {"width", d.width}, {"kind", d.kind == InputKind::String ? "string" : "unary"}});
  json gates = json::array();
  for (GateId id = 0; id < c.gates().size(); ++id) {
    const Gate& g = c.gates()[id];
    json j{{"id", id}, {"op", op_name(g.op)}, {"args", g.args}};
    if (g.op == Op::Th) j["k"] = g.k;
    if (g.op == Op::In) {
      j["var"] = g.var;
      j["bit"] = g.bit;
    }
    gates.push_back(std::move(j));
  }
  const Metrics& m = c.metrics();
  return json{{"inputs", std::move(inputs)},
              {"gates", std::move(gates)},
              {"outputs", c.outputs()},
              {"metrics", {{"depth", m.depth}, {"size", m.size}, {"wires", m.wires}}}};
}

inline std::string export_json(const Circuit& c) { return to_json(c).dump(1) + "\n"; }

// Rebuilds a circuit; gate ids must be 0, 1, 2, ... and stored metrics, when
// present, must match the structure.
inline Circuit from_json(const nlohmann::json& j) {
  try {
    InputLayout layout;
    for (const auto& d : j.at("inputs")) {
      const std::string kind = d.at("kind").get<std::string>();
      if (kind != "string" && kind != "unary") throw DomainError("input kind must be string or unary");
      layout.push_back({d.at("name").get<std::string>(), d.at("width").get<Nat>(),
                        kind == "string" ? InputKind::String : InputKind::Unary});
    }
    std::vector<Gate> gates;
    for (const auto& g : j.at("gates")) {
      if (g.at("id").get<Nat>() != gates.size()) throw DomainError("gate ids must be consecutive from 0");
      Gate gate;
      gate.op = op_from_name(g.at("op").get<std::string>());
      gate.args = g.value("args", std::vector<GateId>{});
      if (gate.op == Op::Th) gate.k = g.at("k").get<Nat>();
      if (gate.op == Op::In) {
        gate.var = g.at("var").get<std::string>();
        gate.bit = g.at("bit").get<Nat>();
      }
      gates.push_back(std::move(gate));
    }
    Circuit c(std::move(layout), std::move(gates), j.at("outputs").get<std::vector<GateId>>());
    if (j.contains("metrics")) {
      const auto& m = j.at("metrics");
      const Metrics stored{m.at("depth").get<Nat>(), m.at("size").get<Nat>(), m.at("wires").get<Nat>()};
      if (!(stored == c.metrics())) throw DomainError("stored metrics do not match the gates");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what(), 1, 1);
  }
}

inline Circuit import_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what(), 1, e.byte);
  }
  return from_json(j);
}

// One node per gate, edges from child to parent, outputs as extra nodes.
inline std::string export_dot(const Circuit& c) {
  std::ostringstream out;
  out << "digraph circuit {\n  rankdir=BT;\n";
  for (GateId id = 0; id < c.gates().size(); ++id) {
    const Gate& g = c.gates()[id];
    std::string label(op_name(g.op));
    if (g.op == Op::Th) label += "[" + std::to_string(g.k) + "]";
    if (g.op == Op::In) label += " " + g.var + "[" + std::to_string(g.bit) + "]";
    out << "  g" << id << " [label=\"" << label << "\"];\n";
  }
  for (GateId id = 0; id < c.gates().size(); ++id)
    for (GateId a : c.gates()[id].args) out << "  g" << a << " -> g" << id << ";\n";
  for (Nat i = 0; i < c.outputs().size(); ++i) {
    out << "  out" << i << " [label=\"out " << i << "\", shape=box];\n";
    out << "  g" << c.outputs()[i] << " -> out" << i << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tcforge::circuits
