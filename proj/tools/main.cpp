#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcforge/circuits/compile.hpp"
#include "tcforge/circuits/io.hpp"
#include "tcforge/circuits/mul.hpp"
#include "tcforge/core/rng.hpp"
#include "tcforge/kernel/text.hpp"
#include "tcforge/logic/classify.hpp"
#include "tcforge/logic/eval.hpp"
#include "tcforge/logic/parser.hpp"
#include "tcforge/logic/printer.hpp"
#include "tcforge/logic/transform.hpp"
#include "tcforge/rsuv/count_via_mul.hpp"
#include "tcforge/rsuv/delta.hpp"
#include "tcforge/rsuv/translate.hpp"
#include "tcforge/subp/gap.hpp"
#include "tcforge/subp/nck.hpp"
#include "tcforge/subp/recursion.hpp"
#include "tcforge/tc0alg/addition.hpp"
#include "tcforge/tc0alg/counting.hpp"
#include "tcforge/tc0alg/multiply.hpp"
#include "tcforge/tc0alg/php.hpp"
#include "tcforge/tc0alg/sum.hpp"
#include "tcforge/verify/suites.hpp"

using namespace tcforge;
using nlohmann::json;

namespace {

// Thrown for bad command lines that CLI11 cannot see (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  bool as_json = false;
  std::string format = "auto";  // set | bin
};

// `@path` reads the file; anything else is taken literally.
std::string arg_text(const std::string& v) {
  if (v.empty() || v[0] != '@') return v;
  std::ifstream in(v.substr(1), std::ios::binary);
  if (!in) throw UsageError("cannot read " + v.substr(1));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string show_bits(const BitSet& x, const Options& o, const char* fallback) {
  const std::string f = o.format == "auto" ? fallback : o.format;
  return f == "set" ? to_set_string(x) : to_binary_string(x);
}

BigNat parse_big(const std::string& text) {
  const std::string t(text_detail::trim(text));
  if (t.size() > 2 && t[0] == '0' && (t[1] == 'b' || t[1] == 'B')) return encode_num(parse_bitset(t));
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a decimal or 0b number, got '" + t + "'", 1, 1);
  return BigNat(t);
}

rsuv::DeltaEnv parse_delta_env(const std::string& text) {
  rsuv::DeltaEnv env;
  const std::string_view s = text_detail::trim(text);
  if (s.empty()) return env;
  for (std::string_view part : text_detail::split_top(s, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected name=value binding", 1, 1);
    env[std::string(text_detail::trim(part.substr(0, eq)))] = parse_big(std::string(part.substr(eq + 1)));
  }
  return env;
}

// `x=X,y=Y`: number variable to string variable.
std::map<std::string, std::string> parse_mapping(const std::string& text) {
  std::map<std::string, std::string> out;
  const std::string_view s = text_detail::trim(text);
  if (s.empty()) return out;
  for (std::string_view part : text_detail::split_top(s, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected number=String pair", 1, 1);
    out[std::string(text_detail::trim(part.substr(0, eq)))] = std::string(text_detail::trim(part.substr(eq + 1)));
  }
  return out;
}

logic::FunctionRegistry registry_with(const std::vector<std::string>& defs) {
  logic::FunctionRegistry reg = logic::FunctionRegistry::standard();
  for (const auto& d : defs) logic::define(reg, arg_text(d));
  return reg;
}

circuits::InputValues circuit_inputs(const circuits::InputLayout& layout, const Assignment& env) {
  circuits::InputValues in;
  for (const auto& d : layout) {
    if (d.kind == circuits::InputKind::String) {
      if (!env.has_str(d.name)) throw DomainError("no value for string input " + d.name);
      in[d.name] = env.str(d.name);
    } else {
      if (!env.has_num(d.name)) throw DomainError("no value for number input " + d.name);
      in[d.name] = env.num(d.name);
    }
  }
  return in;
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.as_json) std::cout << j.dump() << "\n";
  else std::cout << text << "\n";
}


}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Two-sorted logic, threshold arithmetic and circuit toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.as_json, "Print results as JSON");
  app.add_option("--format", opt.format, "Bit-string output: set or bin")->check(CLI::IsMember({"auto", "set", "bin"}));
  std::function<void()> action;

  // eval ---------------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Evaluate a formula or number term");
  std::string formula, term, env_text;
  std::vector<std::string> defs;
  auto* eval_formula_opt = eval->add_option("--formula", formula, "Formula text (or @file)");
  eval->add_option("--term", term, "Number term text (or @file)")->excludes(eval_formula_opt);
  eval->add_option("--env", env_text, "Bindings, e.g. X={1,3},x=2");
  eval->add_option("--define", defs, "Function definition (repeatable)");
  eval->callback([&] {
    action = [&] {
      const auto reg = registry_with(defs);
      Assignment env;
      parse_bindings(env_text, env);
      if (!term.empty()) {
        const Nat v = logic::eval_term(logic::parse_term(arg_text(term), reg), env, reg);
        emit(opt, {{"value", v}}, std::to_string(v));
        return;
      }
      if (formula.empty()) throw UsageError("eval needs --formula or --term");
      const bool v = logic::eval_formula(logic::parse_formula(arg_text(formula), reg), env, reg);
      emit(opt, {{"value", v}}, v ? "true" : "false");
    };
  });

  // transform ------------------------------------------------------------------
  auto* transform = app.add_subcommand("transform", "Rewrite a formula");
  transform->require_subcommand(1);
  std::string mapping;
  for (const char* name : {"lower-th", "eliminate-counting", "flat", "sharp"}) {
    auto* sub = transform->add_subcommand(name);
    sub->add_option("--formula", formula, "Formula text (or @file)")->required();
    sub->add_option("--define", defs, "Function definition (repeatable)");
    if (std::string(name) == "sharp") sub->add_option("--strings", mapping, "Number variables holding strings, e.g. x=X");
    sub->callback([&, name = std::string(name)] {
      action = [&, name] {
        const auto reg = registry_with(defs);
        const std::string text = arg_text(formula);
        if (name == "lower-th") {
          const auto l = logic::lower_th_to_count(logic::parse_formula(text, reg), reg);
          json j{{"formula", logic::to_string(l.formula)}, {"definitions", json::array()}};
          std::string out = logic::to_string(l.formula);
          for (const auto& f : l.introduced) {
            const std::string d = logic::to_string(l.registry.at(f));
            j["definitions"].push_back(d);
            out += "\nwhere " + d;
          }
          emit(opt, j, out);
        } else if (name == "eliminate-counting") {
          const auto e = logic::eliminate_counting(logic::parse_formula(text, reg), reg);
          json j{{"formula", logic::to_string(e.formula)}, {"rounds", json::array()}};
          std::string out = logic::to_string(e.formula);
          for (const auto& s : e.trace) {
            j["rounds"].push_back({{"symbol", s.symbol}, {"depth_before", s.depth_before}, {"depth_after", s.depth_after}});
            out += "\nround " + s.symbol + ": depth " + std::to_string(s.depth_before) + " -> " +
                   std::to_string(s.depth_after);
          }
          emit(opt, j, out);
        } else if (name == "flat") {
          const auto r = rsuv::flat_translate(logic::parse_formula(text, reg));
          json j{{"formula", rsuv::to_string(r.formula)}, {"strings", r.number_for}};
          std::string out = rsuv::to_string(r.formula);
          for (const auto& [s, n] : r.number_for) out += "\nwhere " + n + " encodes " + s;
          emit(opt, j, out);
        } else {
          const auto f = rsuv::sharp_translate(rsuv::parse_delta_formula(text), parse_mapping(mapping));
          emit(opt, {{"formula", logic::to_string(f)}}, logic::to_string(f));
        }
      };
    });
  }

  // compile --------------------------------------------------------------------
  auto* compile = app.add_subcommand("compile", "Compile to a threshold circuit");
  compile->require_subcommand(1);
  std::string layout_text, out_format = "json", out_path;
  Nat width = 0;
  bool show_metrics = false;
  auto write_circuit = [&](const circuits::Circuit& c) {
    const std::string body = out_format == "dot" ? circuits::export_dot(c) : circuits::export_json(c);
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw UsageError("cannot write " + out_path);
      out << body;
    }
    if (show_metrics) {
      const auto m = c.metrics();
      std::cerr << "depth " << m.depth << " size " << m.size << " wires " << m.wires << "\n";
    }
  };
  for (const char* name : {"sigma0", "tc0", "mul"}) {
    auto* sub = compile->add_subcommand(name);
    if (std::string(name) == "mul") {
      sub->add_option("--n", width, "Operand width")->required();
    } else {
      sub->add_option("--formula", formula, "Formula text (or @file)")->required();
      sub->add_option("--layout", layout_text, "Inputs, e.g. X:4,x:3")->required();
      sub->add_option("--define", defs, "Function definition (repeatable)");
    }
    sub->add_option("--format", out_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("--out", out_path, "Write to a file instead of stdout");
    sub->add_flag("--metrics", show_metrics, "Print depth, size and wires on stderr");
    sub->callback([&, name = std::string(name)] {
      action = [&, name] {
        if (name == "mul") {
          write_circuit(circuits::compile_mul(width));
          return;
        }
        const auto reg = registry_with(defs);
        const auto phi = logic::parse_formula(arg_text(formula), reg);
        const auto layout = circuits::parse_layout(layout_text);
        write_circuit(name == "sigma0" ? circuits::compile_sigma0(phi, layout) : circuits::compile_tc0(phi, layout, reg));
      };
    });
  }

  // run-circuit ----------------------------------------------------------------
  auto* run_circuit = app.add_subcommand("run-circuit", "Evaluate a circuit JSON file");
  std::string circuit_path, input_text;
  run_circuit->add_option("--circuit", circuit_path, "Circuit JSON file")->required();
  run_circuit->add_option("--input", input_text, "Input bindings, e.g. X={0,1},x=2");
  run_circuit->callback([&] {
    action = [&] {
      const auto c = circuits::import_json(arg_text("@" + circuit_path));
      Assignment env;
      parse_bindings(input_text, env);
      const auto out = circuits::evaluate(c, circuit_inputs(c.inputs(), env));
      BitSet bits;
      for (Nat i = 0; i < out.size(); ++i)
        if (out[i]) bits.insert(i);
      json j{{"outputs", out}};
      emit(opt, j, show_bits(bits, opt, "bin"));
    };
  });

  // arith ----------------------------------------------------------------------
  auto* arith = app.add_subcommand("arith", "Bit-string arithmetic");
  arith->require_subcommand(1);
  std::string xs, ys, table_text;
  Nat rows = 0, cols = 0, holes = 0;
  for (const char* name : {"add", "mul"}) {
    auto* sub = arith->add_subcommand(name);
    sub->add_option("--x", xs, "Operand (0b... or {i,...})")->required();
    sub->add_option("--y", ys, "Operand (0b... or {i,...})")->required();
    sub->callback([&, name = std::string(name)] {
      action = [&, name] {
        const BitSet x = parse_bitset(xs), y = parse_bitset(ys);
        const BitSet r = name == "add" ? tc0alg::add_bits(x, y) : tc0alg::mul_bits(x, y);
        emit(opt, {{"result", to_binary_string(r)}, {"value", encode_num(r).str()}}, show_bits(r, opt, "bin"));
      };
    });
  }
  auto* sum = arith->add_subcommand("sum", "Sum of the rows of a table");
  sum->add_option("--table", table_text, "Rows, e.g. [{0};{0,1}]")->required();
  sum->add_option("--n", rows, "Number of rows (default: all)");
  sum->add_option("--m", cols, "Row length bound (default: longest row)");
  sum->callback([&] {
    action = [&] {
      const Table2D z = parse_table(arg_text(table_text));
      const Nat n = rows ? rows : z.row_count();
      Nat m = cols;
      if (!m)
        for (Nat i = 0; i < n; ++i) m = std::max(m, z.row(i).length());
      const BitSet r = tc0alg::sum_rows(n, m, z);
      emit(opt, {{"result", to_binary_string(r)}, {"value", encode_num(r).str()}}, show_bits(r, opt, "bin"));
    };
  });
  auto* count = arith->add_subcommand("count", "Counting array of a string");
  count->add_option("--x", xs, "String (0b... or {i,...})")->required();
  count->callback([&] {
    action = [&] {
      const auto a = tc0alg::numones_array(parse_bitset(xs));
      json j = json::array();
      std::string out;
      for (Nat z = 0; z < a.table.row_count(); ++z) {
        j.push_back(a.value_at(z));
        out += (z ? " " : "") + std::to_string(a.value_at(z));
      }
      emit(opt, {{"counts", j}}, out);
    };
  });
  auto* php = arith->add_subcommand("php", "Find two pigeons sharing a hole");
  php->add_option("--a", holes, "Number of holes; pigeons are 0..a")->required();
  php->add_option("--map", table_text, "Table with (hole, pigeon) cells, e.g. [{0,1}]")->required();
  php->callback([&] {
    action = [&] {
      const auto c = tc0alg::php_collision(holes, parse_table(arg_text(table_text)));
      emit(opt, {{"hole", c.hole}, {"pigeons", {c.earlier, c.later}}},
           "hole " + std::to_string(c.hole) + ": pigeons " + std::to_string(c.earlier) + " " + std::to_string(c.later));
    };
  });

  // rsuv -----------------------------------------------------------------------
  auto* rsuv_cmd = app.add_subcommand("rsuv", "Single-sort number view of strings");
  rsuv_cmd->require_subcommand(1);
  std::string num_text, set_text;
  auto* encode = rsuv_cmd->add_subcommand("encode", "String to number");
  encode->add_option("--set", set_text, "String (0b... or {i,...})")->required();
  encode->callback([&] {
    action = [&] {
      const std::string v = encode_num(parse_bitset(set_text)).str();
      emit(opt, {{"value", v}}, v);
    };
  });
  auto* decode = rsuv_cmd->add_subcommand("decode", "Number to string");
  decode->add_option("--num", num_text, "Decimal or 0b number")->required();
  decode->callback([&] {
    action = [&] {
      const BitSet s = decode_num(parse_big(num_text));
      emit(opt, {{"set", s.elements()}}, show_bits(s, opt, "set"));
    };
  });
  auto* delta_cmd = rsuv_cmd->add_subcommand("delta", "Evaluate a number-sort term or formula");
  auto* delta_term_opt = delta_cmd->add_option("--term", term, "Term, e.g. MSP(x,i)");
  delta_cmd->add_option("--formula", formula, "Formula")->excludes(delta_term_opt);
  delta_cmd->add_option("--env", env_text, "Bindings, e.g. x=13,i=2");
  delta_cmd->callback([&] {
    action = [&] {
      const auto env = parse_delta_env(env_text);
      if (!term.empty()) {
        const std::string v = rsuv::eval_delta(rsuv::parse_delta(arg_text(term)), env).str();
        emit(opt, {{"value", v}}, v);
        return;
      }
      if (formula.empty()) throw UsageError("rsuv delta needs --term or --formula");
      const bool v = rsuv::eval_delta(rsuv::parse_delta_formula(arg_text(formula)), env);
      emit(opt, {{"value", v}}, v ? "true" : "false");
    };
  });
  auto* cvm = rsuv_cmd->add_subcommand("count-via-mul", "Counting array read off one product");
  cvm->add_option("--num", num_text, "Decimal or 0b number")->required();
  cvm->callback([&] {
    action = [&] {
      const auto a = rsuv::count_via_mul(parse_big(num_text));
      json j = json::array();
      std::string out;
      for (Nat z = 0; z < a.table.row_count(); ++z) {
        j.push_back({z, a.value_at(z)});
        out += (z ? " " : "") + ("(" + std::to_string(z) + "," + std::to_string(a.value_at(z)) + ")");
      }
      emit(opt, {{"array", j}}, out);
    };
  });

  // sim ------------------------------------------------------------------------
  auto* sim = app.add_subcommand("sim", "Reachability, layered circuits, bounded recursion");
  sim->require_subcommand(1);
  std::string graph_text, init_text, next_text, bound_text;
  Nat target = 0, steps = 0;
  bool has_target = false, permissive = false, trace = false;
  auto* gap = sim->add_subcommand("gap", "Reachability array from vertex 0");
  gap->add_option("--graph", graph_text, "Edge list, e.g. 'a=3; 0->1;' (or @file)")->required();
  gap->add_option("--target", target, "Only report whether this vertex is reachable");
  gap->callback([&] {
    action = [&] {
      const auto g = subp::parse_digraph(arg_text(graph_text));
      has_target = gap->count("--target") > 0;
      if (has_target) {
        const bool v = subp::gap_reach(g, target);
        emit(opt, {{"reachable", v}}, v ? "true" : "false");
        return;
      }
      const Table2D z = subp::gap_array(g);
      json j = json::array();
      std::string out;
      for (Nat k = 0; k < g.a; ++k) {
        j.push_back(z.row(k).elements());
        out += (k ? "\n" : "") + std::to_string(k) + ": " + to_set_string(z.row(k));
      }
      emit(opt, {{"rows", j}}, out);
    };
  });
  auto* nck = sim->add_subcommand("nck", "Evaluate a layered circuit");
  nck->add_option("--circuit", circuit_path, "Layered circuit JSON file")->required();
  nck->add_option("--input", set_text, "Input string (0b... or {i,...})")->required();
  nck->add_flag("--permissive", permissive, "Accept ill-wired circuits vacuously");
  nck->callback([&] {
    action = [&] {
      const auto c = subp::parse_layered(arg_text("@" + circuit_path));
      const Table2D z = subp::nck_eval(c, parse_bitset(set_text), permissive);
      if (z.empty() && permissive && !subp::wiring_fault(c).empty()) {
        emit(opt, {{"vacuous", true}, {"reason", subp::wiring_fault(c)}}, "vacuous: " + subp::wiring_fault(c));
        return;
      }
      json j = json::array();
      std::string out;
      for (Nat d = 0; d <= c.layers.size(); ++d) {
        j.push_back(z.row(d).elements());
        out += (d ? "\n" : "") + std::to_string(d) + ": " + to_set_string(z.row(d));
      }
      emit(opt, {{"layers", j}}, out);
    };
  });
  auto* rec = sim->add_subcommand("rec", "Bounded recursion on strings");
  rec->add_option("--init", init_text, "Bit formula of F(0) in z, X")->required();
  rec->add_option("--next", next_text, "Bit formula of F(x+1) in z, x, X, Y")->required();
  rec->add_option("--bound", bound_text, "Length bound term in x, n")->required();
  rec->add_option("--x", steps, "Number of steps")->required();
  rec->add_option("--input", set_text, "Input string X")->required();
  rec->add_flag("--trace", trace, "Print every step");
  rec->callback([&] {
    action = [&] {
      const auto spec = subp::RecursionSpec::parse(arg_text(init_text), arg_text(next_text), arg_text(bound_text));
      const auto t = subp::rec_trace(spec, steps, parse_bitset(set_text));
      json j = json::array();
      std::string out;
      for (Nat x = trace ? 0 : steps; x <= steps; ++x) {
        j.push_back(t[x].elements());
        out += (out.empty() ? "" : "\n") + (trace ? std::to_string(x) + ": " : "") + show_bits(t[x], opt, "set");
      }
      emit(opt, {{"steps", j}}, out);
    };
  });

  // verify / bench -------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite ('list' shows them, 'all' runs every one)");
  std::string suite;
  Nat seed = default_seed();
  verify_cmd->add_option("suite", suite, "Suite name")->required();
  verify_cmd->add_option("--seed", seed, "PRNG seed (default TCFORGE_SEED or built-in)");
  int verify_status = 0;
  verify_cmd->callback([&] {
    action = [&] {
      if (suite == "list") {
        json j = json::array();
        std::string out;
        for (const auto& s : verify::suites()) {
          j.push_back({{"suite", s.id}, {"title", s.title}});
          out += (out.empty() ? "" : "\n") + s.id + "  " + s.title;
        }
        emit(opt, j, out);
        return;
      }
      std::vector<const verify::SuiteInfo*> chosen;
      if (suite == "all") {
        for (const auto& s : verify::suites()) chosen.push_back(&s);
      } else if (const auto* s = verify::find_suite(suite)) {
        chosen.push_back(s);
      } else {
        throw UsageError("unknown suite '" + suite + "' (try 'verify list')");
      }
      json all = json::array();
      for (const auto* s : chosen) {
        const auto r = verify::run_suite(*s, seed);
        std::cerr << r.id << ": " << r.seconds << " s\n";
        if (opt.as_json) all.push_back(verify::to_json(r));
        else std::cout << verify::to_text(r);
        if (!r.passed()) verify_status = 1;
      }
      if (opt.as_json) std::cout << (chosen.size() == 1 ? all[0] : all).dump() << "\n";
    };
  });

  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* bench_mul = bench->add_subcommand("mul", "Depth and size of the multiplier circuit");
  std::vector<Nat> sizes{4, 8, 16, 32, 64};
  bench_mul->add_option("--sizes", sizes, "Operand widths")->delimiter(',');
  bench_mul->callback([&] {
    action = [&] {
      const auto points = verify::bench_mul(sizes);
      json j = json::array();
      std::ostringstream out;
      out << "n depth size wires";
      for (const auto& p : points) {
        j.push_back({{"n", p.n}, {"depth", p.metrics.depth}, {"size", p.metrics.size}, {"wires", p.metrics.wires}});
        out << "\n" << p.n << " " << p.metrics.depth << " " << p.metrics.size << " " << p.metrics.wires;
        std::cerr << "n=" << p.n << " built in " << p.seconds << " s\n";
      }
      emit(opt, j, out.str());
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (action) action();
    return verify_status;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int main(int argc, char** argv) { return run(argc, argv); }
