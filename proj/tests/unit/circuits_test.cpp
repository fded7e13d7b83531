#include <gtest/gtest.h>

#include <cctype>
#include <regex>
#include <sstream>

#include "tcforge/circuits/circuit.hpp"
#include "tcforge/circuits/compile.hpp"
#include "tcforge/circuits/io.hpp"
#include "tcforge/circuits/majority.hpp"
#include "tcforge/circuits/mul.hpp"
#include "tcforge/logic/eval.hpp"
#include "tcforge/logic/parser.hpp"
#include "tcforge/logic/printer.hpp"
#include "tcforge/tc0alg/multiply.hpp"
#include "tcforge/verify/circuit_inputs.hpp"
#include "tcforge/verify/generators.hpp"
#include "tcforge/verify/oracles.hpp"

using namespace tcforge;
using namespace tcforge::circuits;
using logic::FunctionRegistry;
using logic::parse_formula;

namespace {

const FunctionRegistry& std_reg() {
  static const FunctionRegistry reg = FunctionRegistry::standard();
  return reg;
}

Gate in(const std::string& v, Nat bit) { return Gate{Op::In, 0, {}, v, bit}; }
Gate node(Op op, std::vector<GateId> args, Nat k = 0) { return Gate{op, k, std::move(args), {}, 0}; }

std::vector<bool> bits_of(Nat v, Nat width) {
  std::vector<bool> out;
  for (Nat i = 0; i < width; ++i) out.push_back((v >> i) & 1);
  return out;
}

BitSet set_of(Nat v) { return BitSet::from_words({v}); }

// Circuit output 0 agrees with the evaluator on every layout-consistent input
// (exhaustive up to 12 input bits, else 200 random ones).
::testing::AssertionResult agrees(const Circuit& c, const logic::FormulaPtr& phi, const FunctionRegistry& reg,
                                   Rng& rng) {
  auto bad = verify::find_mismatch(c.inputs(), rng, [&](const InputValues& in) {
    return evaluate(c, in)[0] == logic::eval_formula(phi, verify::to_assignment(in), reg);
  });
  if (!bad) return ::testing::AssertionSuccess();
  std::ostringstream msg;
  for (const auto& [name, v] : *bad) {
    msg << name << "=";
    if (auto* s = std::get_if<BitSet>(&v)) msg << to_set_string(*s) << " ";
    else msg << std::get<Nat>(v) << " ";
  }
  return ::testing::AssertionFailure() << "mismatch at " << msg.str();
}

bool has_gate(const Circuit& c, Op op, Nat k, Nat fanin) {
  for (const auto& g : c.gates())
    if (g.op == op && g.k == k && g.args.size() == fanin) return true;
  return false;
}

}  // namespace

TEST(Circuit, ConstructionInvariants) {
  InputLayout x2{{"X", 2, InputKind::String}};
  EXPECT_THROW(Circuit(x2, {node(Op::True, {})}, {}), DomainError);
  EXPECT_THROW(Circuit(x2, {node(Op::And, {0})}, {0}), DomainError);
  EXPECT_THROW(Circuit(x2, {in("X", 2)}, {0}), DomainError);
  EXPECT_THROW(Circuit(x2, {in("Y", 0)}, {0}), DomainError);
  EXPECT_THROW(Circuit(x2, {in("X", 0), node(Op::Th, {0}, 3)}, {1}), DomainError);
  EXPECT_THROW(Circuit(x2, {in("X", 0), node(Op::Not, {0, 0})}, {1}), DomainError);
  EXPECT_THROW(Circuit(x2, {in("X", 0)}, {1}), DomainError);
  EXPECT_NO_THROW(Circuit(x2, {in("X", 0), node(Op::Th, {0}, 2)}, {1}));
}

TEST(Circuit, EvalAndMetricsExamples) {
  Circuit t({}, {node(Op::True, {})}, {0});
  EXPECT_EQ(evaluate(t, {}), std::vector<bool>{true});
  EXPECT_EQ(t.metrics(), (Metrics{0, 1, 0}));

  Circuit empties({}, {node(Op::And, {}), node(Op::Or, {}), node(Op::Th, {}, 0), node(Op::Th, {}, 1)}, {0, 1, 2, 3});
  EXPECT_EQ(evaluate(empties, {}), (std::vector<bool>{true, false, true, false}));

  InputLayout x4{{"X", 4, InputKind::String}};
  Circuit or4(x4, {in("X", 0), in("X", 1), in("X", 2), in("X", 3), node(Op::Or, {0, 1, 2, 3})}, {4});
  EXPECT_EQ(or4.metrics().depth, 1u);
  EXPECT_EQ(or4.metrics().size, 5u);
  EXPECT_EQ(or4.metrics().wires, 4u);
  EXPECT_EQ(evaluate(or4, {{"X", set_of(0)}}), std::vector<bool>{false});
  EXPECT_EQ(evaluate(or4, {{"X", set_of(4)}}), std::vector<bool>{true});
}

TEST(Circuit, LayoutMismatch) {
  InputLayout layout{{"X", 2, InputKind::String}, {"x", 3, InputKind::Unary}};
  Circuit c(layout, {in("X", 1), in("x", 2), node(Op::And, {0, 1})}, {2});
  EXPECT_EQ(evaluate(c, {{"X", set_of(2)}, {"x", Nat{3}}}), std::vector<bool>{true});
  EXPECT_EQ(evaluate(c, {{"X", set_of(2)}, {"x", Nat{2}}}), std::vector<bool>{false});
  EXPECT_THROW(evaluate(c, {{"X", set_of(2)}}), DomainError);
  EXPECT_THROW(evaluate(c, {{"X", set_of(4)}, {"x", Nat{0}}}), DomainError);
  EXPECT_THROW(evaluate(c, {{"X", set_of(1)}, {"x", Nat{4}}}), DomainError);
  EXPECT_THROW(evaluate(c, {{"X", Nat{1}}, {"x", Nat{0}}}), DomainError);
  EXPECT_THROW(evaluate(c, {{"X", set_of(1)}, {"x", Nat{0}}, {"Y", set_of(0)}}), DomainError);
}

TEST(Circuit, ParseLayout) {
  InputLayout l = parse_layout("X:4, x:3,Y:0");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], (InputDecl{"X", 4, InputKind::String}));
  EXPECT_EQ(l[1], (InputDecl{"x", 3, InputKind::Unary}));
  EXPECT_EQ(l[2], (InputDecl{"Y", 0, InputKind::String}));
  EXPECT_THROW(parse_layout("X"), ParseError);
  EXPECT_THROW(parse_layout("X:a"), ParseError);
}

TEST(Circuit, ThresholdExtremesMatchOrAndAnd) {
  Rng rng(11);
  for (Nat n = 1; n <= 7; ++n) {
    InputLayout layout{{"X", n, InputKind::String}};
    std::vector<Gate> gates;
    std::vector<GateId> kids;
    for (Nat i = 0; i < n; ++i) {
      gates.push_back(in("X", i));
      kids.push_back(i);
    }
    gates.push_back(node(Op::Th, kids, 1));
    gates.push_back(node(Op::Or, kids));
    gates.push_back(node(Op::Th, kids, n));
    gates.push_back(node(Op::And, kids));
    Circuit c(layout, gates, {n, n + 1, n + 2, n + 3});
    for (int t = 0; t < 200; ++t) {
      auto out = evaluate(c, verify::random_input(layout, rng));
      ASSERT_EQ(out[0], out[1]);
      ASSERT_EQ(out[2], out[3]);
    }
  }
}

TEST(Builder, FoldsAndShares) {
  CircuitBuilder b({{"X", 3, InputKind::String}});
  const GateId x0 = b.input("X", 0), x1 = b.input("X", 1);
  EXPECT_EQ(b.input("X", 0), x0);
  EXPECT_TRUE(b.is_const(b.input("X", 7), false));
  EXPECT_EQ(b.and_(x0, x1), b.and_(x1, x0));
  EXPECT_EQ(b.and_(x0, b.truth()), x0);
  EXPECT_TRUE(b.is_const(b.or_(x0, b.truth()), true));
  EXPECT_EQ(b.not_(b.not_(x0)), x0);
  EXPECT_TRUE(b.is_const(b.threshold(0, {x0}), true));
  EXPECT_TRUE(b.is_const(b.threshold(3, {x0, x1}), false));
  EXPECT_EQ(b.threshold(1, {x0, x1}), b.or_(x0, x1));
  EXPECT_EQ(b.threshold(2, {x0, b.truth()}), x0);
  EXPECT_THROW(b.input("Y", 0), DomainError);
}

TEST(CompileSigma0, Examples) {
  Circuit c = compile_sigma0(parse_formula("X(0) & X(1)"), parse_layout("X:2"));
  EXPECT_EQ(c.metrics().size, 3u);
  EXPECT_EQ(evaluate(c, {{"X", set_of(3)}}), std::vector<bool>{true});
  EXPECT_EQ(evaluate(c, {{"X", set_of(1)}}), std::vector<bool>{false});

  Circuit t = compile_sigma0(parse_formula("true"), {});
  EXPECT_EQ(t.gates().size(), 1u);
  EXPECT_EQ(t.gates()[0].op, Op::True);
  EXPECT_EQ(t.metrics().depth, 0u);

  Circuit e = compile_sigma0(parse_formula("E z<4 : X(z)"), parse_layout("X:4"));
  EXPECT_EQ(e.metrics().size, 5u);
  EXPECT_TRUE(has_gate(e, Op::Or, 0, 4));
  EXPECT_EQ(evaluate(e, {{"X", BitSet{}}}), std::vector<bool>{false});
}

TEST(CompileSigma0, Errors) {
  EXPECT_THROW(compile_sigma0(parse_formula("Th[2] z<4 : X(z)"), parse_layout("X:4")), DomainError);
  EXPECT_THROW(compile_sigma0(parse_formula("E Y<=2 : Y(0)"), {}), DomainError);
  EXPECT_THROW(compile_sigma0(parse_formula("X(x)"), parse_layout("X:4")), DomainError);
  EXPECT_NO_THROW(compile_sigma0(parse_formula("X(x)"), parse_layout("X:4,x:2,Y:3")));
  EXPECT_THROW(compile_sigma0(parse_formula("X(0)"), parse_layout("x:4")), DomainError);
  EXPECT_THROW(compile_sigma0(parse_formula("numones(2, X) >= 1"), parse_layout("X:4")), DomainError);
}

TEST(CompileTC0, Examples) {
  Circuit c = compile_tc0(parse_formula("numones(4,X) >= 2"), parse_layout("X:4"));
  EXPECT_TRUE(has_gate(c, Op::Th, 2, 4));
  EXPECT_EQ(evaluate(c, {{"X", set_of(0b1010)}}), std::vector<bool>{true});
  EXPECT_EQ(evaluate(c, {{"X", set_of(0b1000)}}), std::vector<bool>{false});

  Rng rng(3);
  Circuit th1 = compile_tc0(parse_formula("Th[1] z<3 : X(z)"), parse_layout("X:3"));
  Circuit ex = compile_sigma0(parse_formula("E z<3 : X(z)"), parse_layout("X:3"));
  EXPECT_TRUE(has_gate(th1, Op::Or, 0, 3));
  for (Nat v = 0; v < 8; ++v) EXPECT_EQ(evaluate(th1, {{"X", set_of(v)}}), evaluate(ex, {{"X", set_of(v)}}));

  Circuit zero = compile_tc0(parse_formula("Th[0] z<3 : X(z)"), parse_layout("X:3"));
  EXPECT_EQ(zero.gates().size(), 1u);
  EXPECT_EQ(zero.gates()[0].op, Op::True);

  EXPECT_THROW(compile_tc0(parse_formula("E Y<=2 : Y(0)"), {}), DomainError);
}

TEST(CompileTC0, RegisteredFunctions) {
  Rng rng(5);
  FunctionRegistry reg = FunctionRegistry::standard();
  logic::define(reg, "Odd(X) := { z < |X| : X(z) & !X(z + 1) }");
  logic::define(reg, "half(x) := graph y <= x : y + y = x | y + y + 1 = x");
  const char* layout = "X:4,Y:3,x:4";
  for (const char* text : {"pd(x) = 2", "fse(X, Y) <= 1", "half(x) + 1 = |X|", "Odd(X)(x)", "|Odd(X)| = 3",
                           "numones(x, Odd(X)) >= 1", "E z<x : Odd(Y)(z) & !X(z)", "Odd(X) = Y",
                           "Th[x] z<|X| : X(z) | Y(z)", "Mod[2] z<4 : X(z)", "Mod[3] z<x+2 : !Y(z)"}) {
    logic::FormulaPtr phi = logic::parse_formula(text, reg);
    EXPECT_TRUE(agrees(compile_tc0(phi, parse_layout(layout), reg), phi, reg, rng)) << text;
  }
  Circuit row = compile_tc0(parse_formula("row(1; Z)(2)"), parse_layout("Z:18"));
  EXPECT_EQ(evaluate(row, {{"Z", set_of(1 << 16)}}), std::vector<bool>{true});
  EXPECT_EQ(evaluate(row, {{"Z", set_of(1 << 15)}}), std::vector<bool>{false});
}

TEST(CompileTC0, StringFunctionBits) {
  FunctionRegistry reg = FunctionRegistry::standard();
  logic::define(reg, "Odd(X) := { z < |X| : X(z) & !X(z + 1) }");
  Circuit c = compile_string_function("Odd", parse_layout("X:5"), reg);
  ASSERT_EQ(c.outputs().size(), 5u);
  logic::Evaluator ev(reg);
  for (Nat v = 0; v < 32; ++v) {
    Assignment env;
    env.bind("X", set_of(v));
    BitSet expect = ev.eval(logic::ast::sapp("Odd", {}, {logic::ast::svar("X")}), env);
    auto out = evaluate(c, {{"X", set_of(v)}});
    for (Nat i = 0; i < 5; ++i) ASSERT_EQ(out[i], expect(i)) << v << " bit " << i;
  }
  EXPECT_THROW(compile_string_function("pd", parse_layout("x:3"), reg), DomainError);
}

TEST(CompileTC0, RandomFormulasMatchEvaluator) {
  Rng rng(2024);
  verify::FormulaShape shape;
  shape.max_depth = 3;
  shape.max_bound = 4;
  shape.counting_atoms = true;
  verify::FormulaGenerator gen(rng, shape);
  const InputLayout layout = parse_layout("X:4,Y:4,x:4");
  for (int i = 0; i < 120; ++i) {
    logic::FormulaPtr phi = gen.formula();
    ASSERT_TRUE(agrees(compile_tc0(phi, layout, std_reg()), phi, std_reg(), rng)) << logic::to_string(phi);
  }
}

TEST(CompileSigma0, RandomFormulasMatchEvaluator) {
  Rng rng(77);
  verify::FormulaShape shape;
  shape.max_depth = 3;
  shape.max_bound = 5;
  shape.threshold = false;
  shape.modular = false;
  verify::FormulaGenerator gen(rng, shape);
  const InputLayout small = parse_layout("X:4,Y:3,x:4");
  const InputLayout wide = parse_layout("X:9,Y:9,x:6");
  for (int i = 0; i < 120; ++i) {
    logic::FormulaPtr phi = gen.formula();
    for (const auto& layout : {small, wide}) {
      Circuit c = compile_sigma0(phi, layout);
      for (const auto& g : c.gates()) ASSERT_NE(g.op, Op::Th);
      ASSERT_TRUE(agrees(c, phi, std_reg(), rng)) << logic::to_string(phi);
    }
  }
}

TEST(CompileSigma0, DepthDoesNotGrowWithWidth) {
  for (const char* text : {"E z<|X| : X(z) & !Y(z)", "A z<|X| : E w<|Y| : X(z) & Y(w) & z + w = x",
                           "X = Y | |X| <= x"}) {
    logic::FormulaPtr phi = parse_formula(text);
    std::vector<Nat> depths;
    for (Nat w : {4, 8, 16}) {
      InputLayout layout{{"X", w, InputKind::String}, {"Y", w, InputKind::String}, {"x", w, InputKind::Unary}};
      depths.push_back(compile_sigma0(phi, layout).metrics().depth);
    }
    EXPECT_EQ(depths[0], depths[1]) << text;
    EXPECT_EQ(depths[1], depths[2]) << text;
  }
}

TEST(CompileMul, Examples) {
  Circuit two = compile_mul(2);
  EXPECT_EQ(evaluate(two, {{"X", set_of(3)}, {"Y", set_of(3)}}), bits_of(9, 4));

  Circuit one = compile_mul(1);
  ASSERT_EQ(one.outputs().size(), 2u);
  EXPECT_EQ(evaluate(one, {{"X", set_of(1)}, {"Y", set_of(1)}}), bits_of(1, 2));
  EXPECT_EQ(evaluate(one, {{"X", set_of(1)}, {"Y", set_of(0)}}), bits_of(0, 2));

  Circuit four = compile_mul(4);
  EXPECT_EQ(evaluate(four, {{"X", set_of(0b0011)}, {"Y", set_of(0b0010)}}), bits_of(0b110, 8));
  EXPECT_THROW(compile_mul(0), DomainError);
}

TEST(CompileMul, MatchesMulBits) {
  Rng rng(9);
  for (Nat n : {1, 2, 3, 4, 5, 8}) {
    Circuit c = compile_mul(n);
    auto check = [&](const InputValues& in) {
      const BitSet& x = std::get<BitSet>(in.at("X"));
      const BitSet& y = std::get<BitSet>(in.at("Y"));
      const BitSet p = tc0alg::mul_bits(x, y);
      auto out = evaluate(c, in);
      for (Nat i = 0; i < 2 * n; ++i)
        if (out[i] != p(i)) return false;
      return p.length() <= 2 * n;
    };
    EXPECT_FALSE(verify::find_mismatch(c.inputs(), rng, check, 10, 300)) << n;
  }
}

TEST(CompileMul, DepthConstantAndSizeEnvelope) {
  const Circuit base = compile_mul(4);
  const double c = static_cast<double>(base.metrics().size) / 64.0;
  for (Nat n : {2, 3, 8, 16}) {
    Circuit m = compile_mul(n);
    EXPECT_EQ(m.metrics().depth, base.metrics().depth) << n;
    if (n > 4) {
      EXPECT_LE(static_cast<double>(m.metrics().size), c * static_cast<double>(n * n * n)) << n;
    }
  }
}

TEST(CircuitIO, JsonRoundTripFixedPoint) {
  const Circuit c = compile_mul(2);
  const std::string first = export_json(c);
  const Circuit back = import_json(first);
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.metrics(), c.metrics());
  EXPECT_EQ(export_json(back), first);

  const Circuit tc = compile_tc0(parse_formula("numones(4,X) >= 2 & x <= 2"), parse_layout("X:4,x:3"));
  EXPECT_EQ(import_json(export_json(tc)), tc);
}

TEST(CircuitIO, ImportRejectsBadInput) {
  EXPECT_THROW(import_json("{"), ParseError);
  EXPECT_THROW(import_json(R"({"inputs":[],"gates":[{"id":0,"op":"T","args":[]}],"outputs":[]})"), DomainError);
  EXPECT_THROW(import_json(R"({"inputs":[],"gates":[{"id":1,"op":"T","args":[]}],"outputs":[0]})"), DomainError);
  EXPECT_THROW(import_json(R"({"inputs":[],"gates":[{"id":0,"op":"XOR","args":[]}],"outputs":[0]})"), DomainError);
  EXPECT_THROW(
      import_json(R"({"inputs":[],"gates":[{"id":0,"op":"AND","args":[0]}],"outputs":[0]})"), DomainError);
  EXPECT_THROW(import_json(R"({"inputs":[],"gates":[{"id":0,"op":"T","args":[]}],"outputs":[0],
                               "metrics":{"depth":1,"size":1,"wires":0}})"),
               DomainError);
  EXPECT_THROW(import_json(R"({"inputs":[],"gates":[{"id":0,"op":"TH","args":[]}],"outputs":[0]})"), ParseError);
  EXPECT_NO_THROW(import_json(R"({"inputs":[],"gates":[{"id":0,"op":"T","args":[]}],"outputs":[0]})"));
}

// Minimal recognizer for the DOT subset: `digraph ID { stmt* }` where a
// statement is `ID [attr=value, ...];`, `ID -> ID;` or `attr=value;`.
bool parses_as_dot(const std::string& text) {
  const std::string id = R"(([A-Za-z_][A-Za-z_0-9]*|"([^"\\]|\\.)*"|-?[0-9]+))";
  const std::regex header(R"(\s*digraph\s+)" + id + R"(\s*\{\s*)");
  const std::regex attr(id + R"(\s*=\s*)" + id);
  const std::regex node_stmt("\\s*" + id + R"(\s*\[\s*)" + "(" + id + R"(\s*=\s*)" + id + R"(\s*,?\s*)*\]\s*;\s*)");
  const std::regex edge_stmt("\\s*" + id + R"(\s*->\s*)" + id + R"(\s*;\s*)");
  const std::regex attr_stmt("\\s*" + id + R"(\s*=\s*)" + id + R"(\s*;\s*)");
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || !std::regex_match(line, header)) return false;
  bool closed = false;
  while (std::getline(in, line)) {
    if (closed) {
      if (!line.empty()) return false;
      continue;
    }
    if (std::regex_match(line, std::regex(R"(\s*\}\s*)"))) {
      closed = true;
      continue;
    }
    if (!std::regex_match(line, node_stmt) && !std::regex_match(line, edge_stmt) && !std::regex_match(line, attr_stmt))
      return false;
  }
  (void)attr;
  return closed;
}

TEST(CircuitIO, DotFollowsGraphGrammar) {
  const Circuit c = compile_tc0(parse_formula("numones(4,X) >= 2"), parse_layout("X:4"));
  const std::string dot = export_dot(c);
  EXPECT_TRUE(parses_as_dot(dot)) << dot;
  EXPECT_NE(dot.find("[label=\"TH[2]\"]"), std::string::npos);
  EXPECT_NE(dot.find("g0 -> g"), std::string::npos);
  EXPECT_FALSE(parses_as_dot("digraph g {\n  a -> ;\n}\n"));
  EXPECT_TRUE(parses_as_dot(export_dot(compile_mul(2))));
}

TEST(Majority, PaddingGivesStrictMajority) {
  for (Nat n = 0; n <= 12; ++n)
    for (Nat k = 0; k <= n + 1; ++k) {
      auto [p, q] = majority_padding(k, n);
      const Nat total = n + p + q;
      EXPECT_EQ(k + p, total / 2 + 1) << k << " of " << n;
    }
}

TEST(Majority, LoweringPreservesFunction) {
  Rng rng(31);
  for (const char* text : {"numones(4,X) >= 2", "Th[3] z<|X| : X(z) | Y(z)", "Mod[3] z<5 : X(z)", "numones(x, Y) = 2"}) {
    const Circuit c = compile_tc0(parse_formula(text), parse_layout("X:5,Y:4,x:3"));
    const Circuit maj = lower_to_majority(c);
    for (const auto& g : maj.gates()) {
      if (g.op == Op::Th) {
        ASSERT_TRUE(is_majority(g)) << text;
      }
    }
    EXPECT_FALSE(verify::find_mismatch(c.inputs(), rng, [&](const InputValues& in) {
      return evaluate(c, in) == evaluate(maj, in);
    })) << text;
  }
}
