#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "fmu/parser.hpp"

using json = nlohmann::json;

namespace {

struct Out {
  int code;
  std::string text;
};

Out shell(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string text;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) text.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, text};
}

Out cli(const std::string& args, const std::string& env = "") {
  return shell(env + " " + std::string(FMU_BIN) + " " + args + " 2>&1");
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("prob --exact on the von Neumann sample") {
  Out o = cli("prob --exact " + sample("vn13.fmu"));
  CHECK(o.code == 0);
  CHECK(o.text == "1/1\n");
}

TEST_CASE("ciu refutes the t_r pair with exit code 1") {
  Out o = cli("ciu --type \"all a. a -> a\" " + sample("tr_mix.fmu") + " " + sample("tr_512.fmu"));
  CHECK(o.code == 1);
  CHECK(has(o.text, "distinguished"));
  CHECK(has(o.text, "context:"));
  CHECK(has(o.text, "13/72"));
  CHECK(has(o.text, "25/144"));
}

TEST_CASE("errors exit with code 2") {
  Out bad = cli("check " + sample("bad.fmu"));
  CHECK(bad.code == 2);
  CHECK(has(bad.text, "type error"));
  CHECK(cli("").code == 2);
  CHECK(cli("prob --exact --iters 3 " + sample("die.fmu")).code == 2);
  CHECK(cli("prob /nonexistent.fmu").code == 2);
  CHECK(cli("ciu " + sample("die.fmu") + " " + sample("die.fmu")).code == 2);
  CHECK(cli("corpus emit nosuch").code == 2);
}

TEST_CASE("JSON schema instances") {
  Out p = cli("--json prob " + sample("flaky.fmu"));
  REQUIRE(p.code == 0);
  json j = json::parse(p.text);
  CHECK(j["command"] == "prob");
  CHECK(j.contains("input"));
  CHECK(j["result"]["lower"] == "1/2");
  CHECK(j["result"]["upper"] == "1/2");
  CHECK(j["result"]["exact"] == true);

  Out d = cli("--json dist --exact " + sample("die.fmu"));
  json dj = json::parse(d.text);
  REQUIRE(dj["result"].size() == 6);
  for (const auto& e : dj["result"]) CHECK(e["prob"] == "1/6");

  Out c = cli("--json ciu --type \"all a. a -> a\" " + sample("tr_mix.fmu") + " " + sample("tr_512.fmu"));
  CHECK(c.code == 1);
  json cj = json::parse(c.text);
  REQUIRE(cj["result"].is_array());
  const auto& v = cj["result"][0];
  CHECK(v["verdict"] == "distinguished");
  CHECK(v["lhs"]["lower"] == "13/72");
  CHECK(v["rhs"]["upper"] == "25/144");
  // Terms inside JSON re-parse.
  CHECK_NOTHROW(fmu::parse_term(v["context"].get<std::string>(), true));
}

TEST_CASE("JSON output is deterministic") {
  for (const std::string& args : {"--json dist --exact " + sample("map_fused.fmu"),
                                  "--json ciu --both --type \"unit + unit -> unit + unit -> unit + unit\" " +
                                      sample("exp.fmu") + " " + sample("rnd.fmu"),
                                  "--json graph " + sample("die.fmu")}) {
    Out a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.text == b.text);
    CHECK(json::accept(a.text));
  }
}

TEST_CASE("remaining subcommands") {
  Out parse = cli("parse " + sample("die.fmu"));
  CHECK(parse.code == 0);
  CHECK(parse.text == "rand 6\n");
  Out check = cli("check " + sample("exp.fmu"));
  CHECK(check.code == 0);
  CHECK(has(check.text, "unit + unit -> unit + unit -> unit + unit"));
  Out step = cli("step -n 1 " + sample("die.fmu"));
  CHECK(has(step.text, "1/6 [choice] 6"));
  Out run1 = cli("run --seed 5 " + sample("die.fmu")), run2 = cli("run --seed 5 " + sample("die.fmu"));
  CHECK(has(run1.text, "terminated"));
  CHECK(run1.text == run2.text);
  std::string outcomes;
  for (int seed = 1; seed <= 6; ++seed) outcomes += cli("run --fuel 50 --seed " + std::to_string(seed) + " " + sample("flaky.fmu")).text;
  CHECK(has(outcomes, "terminated"));
  CHECK(has(outcomes, "fuel exhausted"));
  Out strat = cli("strat -k 3 " + sample("flaky.fmu"));
  CHECK(strat.code == 0);
  CHECK(has(strat.text, "1/2"));
  Out red = cli("red " + sample("die.fmu"));
  CHECK(has(red.text, "1/6"));
  Out graph = cli("graph " + sample("die.fmu"));
  CHECK(has(graph.text, "7 nodes"));
  CHECK(cli("graph --dot /tmp/fmu_cli_die.dot " + sample("die.fmu")).code == 0);
  CHECK(has(shell("cat /tmp/fmu_cli_die.dot").text, "digraph"));
  Out iters = cli("prob --iters 2 " + sample("flaky.fmu"));
  CHECK(has(iters.text, "Phi^2 = 0/1"));
  CHECK(has(cli("prob --iters 3 " + sample("flaky.fmu")).text, "Phi^3 = 1/2"));
  Out fuel = cli("dist --fuel 3 " + sample("flaky.fmu"));
  CHECK(has(fuel.text, "1/2"));
  Out both = cli("ciu --both --type unit " + sample("flaky.fmu") + " " + sample("flaky.fmu"));
  CHECK(both.code == 0);
}

TEST_CASE("corpus list and emit round trip") {
  Out list = cli("corpus list");
  CHECK(list.code == 0);
  CHECK(has(list.text, "vn_run"));
  CHECK(has(list.text, "map_fused"));
  Out emit = cli("corpus emit er 2 5");
  CHECK(emit.code == 0);
  Out back = cli("corpus emit vn_run 1 3 -o /tmp/fmu_cli_vn.fmu");
  CHECK(back.code == 0);
  CHECK(cli("prob --exact /tmp/fmu_cli_vn.fmu").text == "1/1\n");
  CHECK(cli("dist --exact /tmp/fmu_cli_vn.fmu").code == 0);
}

TEST_CASE("FMU_EFFORT sets defaults and flags override") {
  json a = json::parse(cli("--json prob " + sample("vn13.fmu")).text);
  CHECK(a["result"]["exact"] == true);
  json b = json::parse(cli("--json prob " + sample("vn13.fmu"), "env FMU_EFFORT=budget=10").text);
  CHECK(b["result"]["exact"] == false);
  CHECK(b["input"]["budget"] == 10);
  json c = json::parse(cli("--json --budget 20000 prob " + sample("vn13.fmu"), "env FMU_EFFORT=budget=10").text);
  CHECK(c["result"]["exact"] == true);
}
