#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "fmu/analysis.hpp"
#include "fmu/corpus.hpp"
#include "fmu/equiv.hpp"
#include "fmu/json_out.hpp"
#include "fmu/parser.hpp"
#include "fmu/pretty.hpp"
#include "fmu/typecheck.hpp"

using namespace fmu;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  bool json = false;
  bool exact = false;
  bool both = false;
  std::optional<size_t> budget, fuel;
  std::optional<unsigned> iters, k, depth, steps;
  std::optional<uint64_t> seed;
  std::string type;
  std::string dot;
  std::string out;
  std::vector<std::string> files;
  std::vector<std::string> args;
};

Effort effort(const Flags& f) {
  Effort e = effort_from_env();
  if (f.budget) e.node_budget = *f.budget;
  if (f.fuel) e.fuel = *f.fuel;
  if (f.iters) e.iters = *f.iters;
  if (f.k) e.k = *f.k;
  if (f.depth) e.depth = *f.depth;
  if (f.seed) e.seed = *f.seed;
  return e;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TermPtr load_open(const std::string& path) { return parse_term(read_file(path)); }

TermPtr load_closed(const std::string& path) {
  TermPtr t = load_open(path);
  auto fv = free_vars(t);
  if (!fv.empty()) throw TypeError("unbound variable " + fv.front() + " in " + path);
  return t;
}

// Evaluation ignores annotations; dropping them keeps printed configs short.
TermPtr load(const std::string& path) { return erase(load_closed(path)); }

std::string rat(const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; }

void print(const Flags& f, const std::string& command, const Json& input, const Json& result,
           const std::function<void()>& text) {
  if (f.json)
    std::cout << emit_json(command, input, result) << "\n";
  else
    text();
}

Json input_of(const Flags& f) {
  Json in;
  in["files"] = f.files;
  return in;
}

int cmd_parse(const Flags& f) {
  TermPtr t = load_open(f.files.at(0));
  std::string p = pretty(t);
  print(f, "parse", input_of(f), Json{{"term", p}}, [&] { std::cout << p << "\n"; });
  return 0;
}

int cmd_check(const Flags& f) {
  TermPtr t = load_closed(f.files.at(0));
  TypePtr expected = f.type.empty() ? nullptr : parse_type(f.type);
  TypePtr got = typecheck(t, expected);
  std::string s = pretty_type(got);
  print(f, "check", input_of(f), Json{{"type", s}}, [&] { std::cout << s << "\n"; });
  return 0;
}

Json step_tree(const Config& c, unsigned depth, std::ostream* os, int indent) {
  Json node;
  node["config"] = pretty_config(c);
  Status st = status(c);
  node["status"] = st == Status::Value ? "value" : st == Status::Stuck ? "stuck" : "live";
  Json kids = Json::array();
  if (depth > 0) {
    for (const auto& s : step_successors(c)) {
      if (os)
        *os << std::string(static_cast<size_t>(indent) * 2, ' ') << to_string(s.weight) << " [" << kind_name(s.kind)
            << "] " << pretty_config(s.target) << "\n";
      Json k = step_tree(s.target, depth - 1, os, indent + 1);
      k["weight"] = to_string(s.weight);
      k["kind"] = kind_name(s.kind);
      kids.push_back(k);
    }
  }
  node["successors"] = kids;
  return node;
}

int cmd_step(const Flags& f) {
  Config c = make_config(load(f.files.at(0)));
  unsigned n = f.steps.value_or(1);
  if (f.json) {
    print(f, "step", input_of(f), step_tree(c, n, nullptr, 0), [] {});
  } else {
    std::cout << pretty_config(c) << "\n";
    step_tree(c, n, &std::cout, 1);
  }
  return 0;
}

int cmd_run(const Flags& f) {
  Effort e = effort(f);
  Config c = make_config(load(f.files.at(0)));
  RunResult r = sample_run(c, e.seed, e.fuel);
  const char* what = r.outcome == RunOutcome::Terminated ? "terminated"
                     : r.outcome == RunOutcome::StuckAt  ? "stuck"
                                                         : "fuel exhausted";
  std::string cfg = pretty_config(r.config);
  Json in = input_of(f);
  in["seed"] = e.seed;
  in["fuel"] = e.fuel;
  print(f, "run", in, Json{{"outcome", what}, {"config", cfg}, {"steps", r.steps}},
        [&] { std::cout << what << " after " << r.steps << " steps: " << cfg << "\n"; });
  return 0;
}

int cmd_prob(const Flags& f) {
  Effort e = effort(f);
  Config c = make_config(load(f.files.at(0)));
  Json in = input_of(f);
  in["budget"] = e.node_budget;
  if (f.exact) {
    ChainGraph g = build_chain(c, e.node_budget);
    if (!g.complete) throw UsageError("chain incomplete after " + std::to_string(g.size()) + " nodes; raise --budget");
    Rational p = (*solve_exact(g))[0];
    Bounds b{p, p, true, g.size()};
    print(f, "prob", in, to_json(b), [&] { std::cout << to_string(p) << "\n"; });
  } else if (f.iters) {
    bool truncated = false;
    Rational p = phi_lower(c, *f.iters, e.node_budget, &truncated);
    in["iters"] = *f.iters;
    print(f, "prob", in, Json{{"lower", to_string(p)}, {"truncated", truncated}},
          [&] { std::cout << "Phi^" << *f.iters << " = " << rat(p) << (truncated ? " (budget hit)" : "") << "\n"; });
  } else {
    Bounds b = prob_bounds(c, e);
    print(f, "prob", in, to_json(b), [&] {
      if (b.exact)
        std::cout << to_string(b.lower) << "\n";
      else
        std::cout << "between " << rat(b.lower) << " and " << rat(b.upper) << " (" << b.nodes << " nodes)\n";
    });
  }
  return 0;
}

int cmd_strat(const Flags& f) {
  Effort e = effort(f);
  Config c = make_config(load(f.files.at(0)));
  bool truncated = false;
  Rational p = psi_stratified(c, e.k, e.node_budget, e.cuff_budget, &truncated);
  Json in = input_of(f);
  in["k"] = e.k;
  print(f, "strat", in, Json{{"value", to_string(p)}, {"truncated", truncated}},
        [&] { std::cout << "P_" << e.k << " = " << rat(p) << (truncated ? " (budget hit)" : "") << "\n"; });
  return 0;
}

void print_dist(const Distribution& d) {
  for (const auto& [v, p] : d.sorted()) std::cout << v << "\t" << to_string(p) << "\n";
}

int cmd_dist(const Flags& f) {
  Effort e = effort(f);
  Config c = make_config(load(f.files.at(0)));
  Json in = input_of(f);
  if (f.exact) {
    auto d = distribution_of(c, e.node_budget);
    if (!d) throw UsageError("chain incomplete; raise --budget");
    print(f, "dist", in, to_json(*d), [&] { print_dist(*d); });
  } else {
    unsigned n = f.fuel ? static_cast<unsigned>(*f.fuel) : e.iters;
    bool truncated = false;
    Distribution d = xi_distribution(c, n, e.node_budget, &truncated);
    in["steps"] = n;
    print(f, "dist", in, to_json(d), [&] {
      print_dist(d);
      std::cout << "# within " << n << " steps, mass " << to_string(d.mass()) << (truncated ? ", budget hit" : "")
                << "\n";
    });
  }
  return 0;
}

int cmd_red(const Flags& f) {
  Effort e = effort(f);
  Config c = make_config(load(f.files.at(0)));
  auto paths = red_set(c, e.cuff_budget);
  Json arr = Json::array();
  for (const auto& p : paths)
    arr.push_back(Json{{"weight", to_string(p.weight())}, {"length", p.steps.size()}, {"last", pretty_config(p.last())}});
  print(f, "red", input_of(f), arr, [&] {
    for (const auto& p : paths)
      std::cout << to_string(p.weight()) << "\t" << p.steps.size() << "\t" << pretty_config(p.last()) << "\n";
  });
  return 0;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

int cmd_graph(const Flags& f) {
  Effort e = effort(f);
  Config c = make_config(load(f.files.at(0)));
  ChainGraph g = build_chain(c, e.node_budget);
  if (!f.dot.empty()) {
    std::ofstream out(f.dot);
    if (!out) throw UsageError("cannot write " + f.dot);
    out << "digraph chain {\n";
    for (size_t v = 0; v < g.size(); ++v) {
      std::string label = pretty_config(g.nodes[v]);
      if (label.size() > 60) label = label.substr(0, 57) + "...";
      const char* shape = g.status[v] == Status::Value ? "doublecircle" : g.status[v] == Status::Stuck ? "box" : "ellipse";
      out << "  n" << v << " [shape=" << shape << ", label=\"" << dot_escape(label) << "\"];\n";
      for (const auto& ed : g.out[v])
        out << "  n" << v << " -> n" << ed.to << " [label=\"" << to_string(ed.weight) << "\"];\n";
    }
    out << "}\n";
  }
  size_t edges = 0;
  for (const auto& o : g.out) edges += o.size();
  print(f, "graph", input_of(f), Json{{"nodes", g.size()}, {"edges", edges}, {"complete", g.complete}},
        [&] { std::cout << g.size() << " nodes, " << edges << " edges, " << (g.complete ? "complete" : "incomplete") << "\n"; });
  return 0;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["verdict"] = verdict_name(v.kind);
  j["depth"] = v.depth;
  j["budget"] = v.node_budget;
  j["contexts"] = v.contexts_checked;
  if (v.context) {
    j["context"] = pretty(v.context);
    j["lhs"] = to_json(v.lhs);
    j["rhs"] = to_json(v.rhs);
  }
  return j;
}

void print_verdict(const std::string& title, const Verdict& v) {
  std::cout << title << ": " << verdict_name(v.kind) << " (depth " << v.depth << ", " << v.contexts_checked
            << " contexts, budget " << v.node_budget << ")\n";
  if (!v.context) return;
  std::cout << "  context: " << pretty(v.context) << "\n";
  if (v.kind == VerdictKind::Distinguished) {
    std::cout << "  lower P(E[lhs]) = " << rat(v.lhs.lower) << "\n";
    std::cout << "  upper P(E[rhs]) = " << rat(v.rhs.upper) << "\n";
  } else {
    std::cout << "  P(E[lhs]) in [" << rat(v.lhs.lower) << ", " << rat(v.lhs.upper) << "]\n";
    std::cout << "  P(E[rhs]) in [" << rat(v.rhs.lower) << ", " << rat(v.rhs.upper) << "]\n";
  }
}

int cmd_ciu(const Flags& f) {
  if (f.files.size() != 2) throw UsageError("ciu needs LHS and RHS files");
  if (f.type.empty()) throw UsageError("ciu needs --type");
  TermPtr lhs = load_closed(f.files[0]), rhs = load_closed(f.files[1]);
  TypePtr t = parse_type(f.type);
  CiuOptions o;
  o.effort = effort(f);
  Json in = input_of(f);
  in["type"] = pretty_type(t);
  std::vector<std::pair<std::string, Verdict>> vs;
  if (f.both) {
    auto [a, b] = ciu_equiv(lhs, rhs, t, o);
    vs = {{"lhs <= rhs", a}, {"rhs <= lhs", b}};
  } else {
    vs = {{"lhs <= rhs", ciu_approx(lhs, rhs, t, o)}};
  }
  Json res = Json::array();
  for (const auto& [title, v] : vs) {
    Json j = verdict_json(v);
    j["direction"] = title;
    res.push_back(j);
  }
  print(f, "ciu", in, res, [&] {
    for (const auto& [title, v] : vs) print_verdict(title, v);
  });
  for (const auto& [title, v] : vs)
    if (v.kind == VerdictKind::Distinguished) return 1;
  return 0;
}

int cmd_corpus(const Flags& f) {
  if (f.args.empty()) throw UsageError("corpus needs 'list' or 'emit NAME [PARAMS]'");
  if (f.args[0] == "list") {
    Json arr = Json::array();
    for (const auto& p : corpus::programs())
      arr.push_back(Json{{"name", p.name}, {"params", p.params}, {"type", pretty_type(p.type)}, {"description", p.description}});
    print(f, "corpus", Json{{"action", "list"}}, arr, [&] {
      for (const auto& p : corpus::programs())
        std::cout << p.name << (p.params.empty() ? "" : " " + p.params) << "\t" << pretty_type(p.type) << "\t"
                  << p.description << "\n";
    });
    return 0;
  }
  if (f.args[0] == "emit") {
    if (f.args.size() < 2) throw UsageError("corpus emit needs a program name");
    std::vector<std::string> params(f.args.begin() + 2, f.args.end());
    corpus::ProgramSpec p = corpus::make_program(f.args[1], params);
    std::string src = pretty(p.term);
    if (!f.out.empty()) {
      std::ofstream out(f.out);
      if (!out) throw UsageError("cannot write " + f.out);
      out << "# " << p.name << (p.params.empty() ? "" : " " + p.params) << " : " << pretty_type(p.type) << "\n"
          << src << "\n";
    }
    print(f, "corpus", Json{{"action", "emit"}, {"name", p.name}, {"params", p.params}},
          Json{{"term", src}, {"type", pretty_type(p.type)}}, [&] {
            if (f.out.empty()) std::cout << src << "\n";
          });
    return 0;
  }
  throw UsageError("unknown corpus action " + f.args[0]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fmu: analyses for a probabilistic polymorphic lambda calculus"};
  app.require_subcommand(1);
  Flags f;
  app.add_flag("--json", f.json, "emit one JSON document");
  app.add_option("--budget", f.budget, "node budget for chain exploration")->check(CLI::PositiveNumber);
  app.add_option("--iters", f.iters, "iteration count")->check(CLI::PositiveNumber);
  app.add_option("-k", f.k, "stratification index")->check(CLI::PositiveNumber);
  app.add_option("--depth", f.depth, "context depth")->check(CLI::NonNegativeNumber);
  app.add_option("--fuel", f.fuel, "step bound")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "sampling seed");
  app.fallthrough();

  std::map<std::string, std::function<int(const Flags&)>> handlers;
  auto file_cmd = [&](const std::string& name, const std::string& help, std::function<int(const Flags&)> h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("file", f.files, "input .fmu file")->required()->expected(1);
    handlers[name] = std::move(h);
    return s;
  };
  file_cmd("parse", "print the parsed term", cmd_parse);
  file_cmd("check", "typecheck", cmd_check)->add_option("--type", f.type, "expected type");
  file_cmd("step", "weighted successor tree", cmd_step)->add_option("-n", f.steps, "tree depth");
  file_cmd("run", "sample one run", cmd_run);
  file_cmd("prob", "termination probability", cmd_prob)->add_flag("--exact", f.exact, "solve the finite chain");
  file_cmd("strat", "stratified termination probability", cmd_strat);
  file_cmd("dist", "output distribution", cmd_dist)->add_flag("--exact", f.exact, "solve the finite chain");
  file_cmd("red", "paths ending in one choice or unfold-fold step", cmd_red);
  file_cmd("graph", "explore the reachable chain", cmd_graph)->add_option("--dot", f.dot, "write Graphviz output");

  CLI::App* ciu = app.add_subcommand("ciu", "compare two programs under evaluation contexts");
  ciu->add_option("files", f.files, "LHS RHS")->required()->expected(2);
  ciu->add_option("--type", f.type, "type of both programs");
  ciu->add_flag("--both", f.both, "check both directions");
  handlers["ciu"] = cmd_ciu;

  CLI::App* cor = app.add_subcommand("corpus", "list or emit built-in programs");
  cor->add_option("args", f.args, "list | emit NAME [PARAMS]")->required();
  cor->add_option("-o", f.out, "output file");
  handlers["corpus"] = cmd_corpus;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (f.exact && f.iters) {
    std::cerr << "--exact and --iters are mutually exclusive\n";
    return 2;
  }
  try {
    return handlers.at(app.get_subcommands().front()->get_name())(f);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
  } catch (const CuffBudgetError& e) {
    std::cerr << e.what() << "\n";
  }
  return 2;
}
