#include <doctest.h>

#include "fmu/corpus.hpp"
#include "fmu/pretty.hpp"
#include "support.hpp"

using namespace fmu;
using support::cfg;

namespace {

TermPtr applied(const char* name) {
  auto p = corpus::make_program(name);
  return p.type->tag == TypeTag::Arrow ? tm::app(p.term, tm::unit()) : p.term;
}

TermPtr with_defs(const std::string& src) {
  return corpus::build(src, {{"omega", support::omega()},
                             {"omega_nat", corpus::mk_omega(ty::nat())},
                             {"vn", corpus::mk_von_neumann(1, 3)},
                             {"er12", corpus::mk_er_rational(1, 2)},
                             {"er25", corpus::mk_er_rational(2, 5)},
                             {"tr", corpus::mk_tr(1, 2)},
                             {"hesitant", corpus::mk_hesitant()},
                             {"mix", corpus::make_program("tr_mix").term}});
}

// Small closed programs with complete chains, mixing loops, choices,
// unfold-fold steps and heap use.
std::vector<Config> small_programs() {
  std::vector<Config> out;
  for (const char* src : {"() (+) omega", "ifz (rand 3) then () else omega", "vn ()", "er12 ()", "er25 ()",
                          "tr [unit] ()", "hesitant [nat] 2", "mix [unit] ()",
                          "let r = ref 1 in r := rand 3; ifz !r then (!r, ref 2) else (succ !r, ref 1)"})
    out.push_back(make_config(erase(with_defs(src))));
  out.push_back(make_config(erase(applied("map_split"))));
  return out;
}

std::map<std::string, Rational> as_map(const Distribution& d) {
  std::map<std::string, Rational> m;
  for (const auto& [k, p] : d.sorted()) m[k] = p;
  return m;
}

void value_paths(const Config& c, unsigned len, const Rational& w, std::vector<std::pair<Config, Rational>>& out) {
  if (status(c) == Status::Value) {
    out.emplace_back(c, w);
    return;
  }
  if (len == 0) return;
  for (const auto& s : step_successors(c)) value_paths(s.target, len - 1, w * s.weight, out);
}

bool same_graph(const ChainGraph& a, const ChainGraph& b) {
  if (a.size() != b.size() || a.complete != b.complete) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!config_equal(a.nodes[i], b.nodes[i]) || a.status[i] != b.status[i] || a.out[i].size() != b.out[i].size())
      return false;
    for (size_t j = 0; j < a.out[i].size(); ++j)
      if (a.out[i][j].to != b.out[i][j].to || a.out[i][j].weight != b.out[i][j].weight) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("phi examples") {
  CHECK(phi_lower(cfg("()"), 1) == 1);
  CHECK(phi_lower(cfg("()"), 0) == 0);
  for (unsigned n = 0; n < 20; ++n) CHECK(phi_lower(make_config(support::omega()), n) == 0);
  // () (+) Omega: rand 2 -> {ifz 1 .., ifz 2 ..} -> {(), Omega}; () counts at the third level.
  Config c = cfg("() (+) omega");
  CHECK(phi_lower(c, 2) == 0);
  CHECK(phi_lower(c, 3) == Rational(1, 2));
  CHECK(phi_lower(c, 30) == Rational(1, 2));
  CHECK(phi_lower(cfg("fst ()"), 10) == 0);
}

TEST_CASE("red examples") {
  auto r = red_set(cfg("rand 2"));
  REQUIRE(r.size() == 2);
  for (const auto& p : r) {
    CHECK(p.steps.size() == 1);
    CHECK(p.weight() == Rational(1, 2));
  }
  auto u = red_set(cfg("unfold (fold ())"));
  REQUIRE(u.size() == 1);
  CHECK(u[0].weight() == 1);
  CHECK(u[0].steps.back().kind == StepKind::UnfoldFold);
  CHECK(red_set(cfg("()")).empty());
  CHECK(red_set(cfg("fst ()")).empty());

  auto pre = red_set(cfg("(fn x => rand x) 3"));
  REQUIRE(pre.size() == 3);
  for (const auto& p : pre) {
    CHECK(p.steps.size() == 2);
    CHECK(p.steps[0].kind == StepKind::Other);
    CHECK(p.steps[1].kind == StepKind::Choice);
  }
}

TEST_CASE("psi examples") {
  CHECK(psi_stratified(cfg("() (+) omega"), 0) == 0);
  CHECK(psi_stratified(cfg("(fn x => x) ()"), 1) == 1);
  CHECK(psi_stratified(cfg("() (+) omega"), 2) == Rational(1, 2));
  CHECK(psi_stratified(cfg("() (+) omega"), 1) == 0);
  CHECK_THROWS_AS(psi_stratified(cfg("succ (succ (succ (succ 1)))"), 3, 20000, 2), CuffBudgetError);
}

TEST_CASE("xi examples") {
  CHECK(as_map(xi_distribution(cfg("1"), 1)) == std::map<std::string, Rational>{{"1", 1}});
  CHECK(as_map(xi_distribution(cfg("rand 2"), 2)) ==
        std::map<std::string, Rational>{{"1", Rational(1, 2)}, {"2", Rational(1, 2)}});
  Config c = cfg("() (+) omega");
  CHECK(xi_distribution(c, 3).mass() == Rational(1, 2));
  CHECK(xi_distribution(c, 3).mass() == phi_lower(c, 3));
}

TEST_CASE("build_chain examples") {
  ChainGraph r = build_chain(cfg("rand 2"), 10);
  CHECK(r.size() == 3);
  CHECK(r.complete);
  ChainGraph o = build_chain(make_config(support::omega()), 10);
  CHECK(o.complete);
  for (auto s : o.status) CHECK(s == Status::Live);

  auto [c1, c2] = corpus::mk_counters();
  TermPtr once = corpus::build(
      "unpack c as p in let r = (fst p) () in (snd (snd p)) r; (fst (snd p)) r", {{"c", c1}});
  ChainGraph g = build_chain(make_config(erase(once)), 100000);
  CHECK(g.complete);
  bool heap_state = false;
  for (const auto& n : g.nodes) heap_state = heap_state || !n.heap.empty();
  CHECK(heap_state);
  auto x = solve_exact(g);
  REQUIRE(x);
  CHECK((*x)[0] == 1);

  ChainGraph cut = build_chain(make_config(erase(applied("er_seq"))), 50);
  CHECK_FALSE(cut.complete);
  CHECK(cut.size() <= 50);
  CHECK_FALSE(solve_exact(cut).has_value());
  CHECK_FALSE(exact_distribution(cut).has_value());
}

TEST_CASE("solve_exact examples") {
  CHECK((*solve_exact(build_chain(make_config(support::omega()))))[0] == 0);
  CHECK((*solve_exact(build_chain(cfg("ifz (rand 3) then () else omega"))))[0] == Rational(1, 3));
  CHECK((*solve_exact(build_chain(make_config(erase(applied("vn_run"))))))[0] == 1);
}

TEST_CASE("prob_bounds examples") {
  Bounds u = prob_bounds(cfg("()"));
  CHECK(u.exact);
  CHECK(u.lower == 1);
  CHECK(u.upper == 1);
  Bounds h = prob_bounds(cfg("() (+) omega"));
  CHECK(h.exact);
  CHECK(h.lower == Rational(1, 2));
  CHECK(h.upper == Rational(1, 2));
  Effort small;
  small.node_budget = 60;
  Bounds b = prob_bounds(make_config(erase(applied("er_seq"))), small);
  CHECK_FALSE(b.exact);
  CHECK(b.lower < b.upper);
  CHECK(b.lower <= Rational(1, 2));
  CHECK(b.upper >= Rational(1, 2));
}

TEST_CASE("exact_distribution examples") {
  CHECK(as_map(*exact_distribution(build_chain(cfg("rand 2")))) ==
        std::map<std::string, Rational>{{"1", Rational(1, 2)}, {"2", Rational(1, 2)}});
  auto vn = as_map(*exact_distribution(build_chain(make_config(erase(applied("vn_run"))))));
  CHECK(vn == std::map<std::string, Rational>{{"inl ()", Rational(1, 2)}, {"inr ()", Rational(1, 2)}});
  auto hz = as_map(*exact_distribution(build_chain(make_config(erase(with_defs("hesitant [unit] ()"))))));
  CHECK(hz == std::map<std::string, Rational>{{"()", 1}});
}

TEST_CASE("parallel exploration matches the serial reference") {
  for (const auto& c : small_programs()) {
    ExploreOptions par;
    par.node_budget = 5000;
    CHECK(same_graph(explore(c, par), build_chain_serial(c, 5000)));
    par.node_budget = 17;
    CHECK(same_graph(explore(c, par), build_chain_serial(c, 17)));
  }
  Config big = make_config(erase(applied("er_seq")));
  CHECK(same_graph(build_chain(big, 20000), build_chain_serial(big, 20000)));
}

TEST_CASE("solver agrees with the dense oracle") {
  std::vector<Config> cs = small_programs();
  cs.push_back(make_config(erase(applied("er_seq"))));
  support::Gen g(31);
  for (uint64_t i = 0; i < 40; ++i) cs.push_back(make_config(support::maybe_diverging(g, i)));
  for (const auto& c : cs) {
    ChainGraph gr = build_chain(c, 20000);
    REQUIRE(gr.complete);
    auto x = solve_exact(gr);
    REQUIRE(x);
    CHECK(*x == support::dense_solve(gr));
    auto d = exact_distribution(gr);
    REQUIRE(d);
    CHECK(d->mass() == (*x)[0]);
  }
}

TEST_CASE("Phi and Psi are monotone") {
  for (const auto& c : small_programs()) {
    CAPTURE(pretty_config(c));
    auto phi = phi_series(c, 30);
    auto psi = psi_series(c, 30);
    for (size_t i = 0; i + 1 < phi.size(); ++i) CHECK(phi[i] <= phi[i + 1]);
    for (size_t i = 0; i + 1 < psi.size(); ++i) CHECK(psi[i] <= psi[i + 1]);
  }
}

TEST_CASE("choice-free steps preserve termination probability") {
  for (const auto& c : small_programs()) {
    ChainGraph g = build_chain(c);
    auto x = *solve_exact(g);
    for (uint32_t v = 0; v < g.size(); ++v)
      for (const auto& e : g.out[v])
        if (e.kind != StepKind::Choice) CHECK(x[v] == x[e.to]);
  }
}

TEST_CASE("cuff steps stay at the same step index") {
  for (const auto& c : small_programs()) {
    ChainGraph g = build_chain(c);
    for (uint32_t v = 0; v < g.size() && v < 120; ++v)
      for (const auto& e : g.out[v])
        if (e.kind == StepKind::Other) CHECK(psi_series(g.nodes[v], 20) == psi_series(g.nodes[e.to], 20));
  }
}

TEST_CASE("Psi at a choice or unfold-fold redex") {
  for (const auto& c : small_programs()) {
    ChainGraph g = build_chain(c);
    for (uint32_t v = 0; v < g.size() && v < 120; ++v) {
      if (g.out[v].empty() || g.out[v][0].kind == StepKind::Other) continue;
      auto here = psi_series(g.nodes[v], 12);
      std::vector<std::vector<Rational>> next;
      for (const auto& e : g.out[v]) next.push_back(psi_series(g.nodes[e.to], 11));
      for (unsigned k = 0; k < 12; ++k) {
        Rational sum = 0;
        for (size_t j = 0; j < next.size(); ++j) sum += g.out[v][j].weight * next[j][k];
        CHECK(here[k + 1] == sum);
        if (g.out[v][0].kind == StepKind::UnfoldFold) CHECK(here[k + 1] == next[0][k]);
      }
    }
  }
}

TEST_CASE("iterates never exceed the exact probability") {
  std::vector<Config> cs = small_programs();
  cs.push_back(make_config(erase(applied("er_seq"))));
  for (const auto& c : cs) {
    Rational p = (*solve_exact(build_chain(c)))[0];
    for (auto q : phi_series(c, 30)) CHECK(q <= p);
    for (auto q : psi_series(c, 30)) CHECK(q <= p);
  }
}

TEST_CASE("Xi mass equals Phi at every iteration") {
  for (const auto& c : small_programs()) {
    auto phi = phi_series(c, 30);
    for (unsigned n = 0; n <= 30; n += 3) CHECK(xi_distribution(c, n).mass() == phi[n]);
  }
}

TEST_CASE("Xi counts paths") {
  for (const auto& c : small_programs()) {
    for (unsigned l = 0; l <= 9; ++l) {
      std::map<std::string, Rational> paths;
      support::enumerate_paths(c, l, 1, paths);
      auto xi = as_map(xi_distribution(c, l + 1));
      CHECK(xi == paths);
    }
  }
}

TEST_CASE("monadic bind for distributions") {
  const char* contexts[] = {"succ [.]", "(fn x => (x, rand 2)) [.]", "ifz [.] then () else omega",
                            "(fn x => ifz pred x then rand x else omega_nat) [.]"};
  const char* terms[] = {"rand 3", "ifz (rand 3) then 1 else omega_nat", "1 (+) (2 (+) 3)", "succ (rand 2)"};
  std::map<std::string, TermPtr> defs{{"omega", support::omega()}, {"omega_nat", corpus::mk_omega(ty::nat())}};
  for (const char* cs : contexts) {
    TermPtr ctx = substitute(parse_term(cs, true), defs);
    for (const char* es : terms) {
      TermPtr e = substitute(parse_term(es), defs);
      std::string where = std::string(cs) + " / " + es;
      CAPTURE(where);
      auto whole = as_map(*exact_distribution(build_chain(make_config(plug_hole(ctx, e)))));
      std::map<std::string, Rational> bound;
      Distribution inner = *exact_distribution(build_chain(make_config(e)));
      for (const auto& [v, p] : inner.entries()) {
        Distribution outer = *exact_distribution(build_chain(make_config(plug_hole(ctx, v.term))));
        for (const auto& [k, q] : outer.sorted()) bound[k] += p * q;
      }
      std::string lhs, rhs;
      for (const auto& [k, p] : whole) lhs += k + ":" + p.get_str() + " ";
      for (const auto& [k, p] : bound) rhs += k + ":" + p.get_str() + " ";
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("sequencing multiplies termination probabilities") {
  std::vector<TermPtr> ts;
  for (const char* src : {"() (+) omega", "ifz (rand 3) then () else omega", "er12 ()", "er25 ()", "tr [unit] ()"})
    ts.push_back(erase(with_defs(src)));
  auto p = [](const TermPtr& t) { return (*solve_exact(build_chain(make_config(t))))[0]; };
  for (const auto& a : ts)
    for (const auto& b : ts) CHECK(p(tm::seq(a, b)) == p(a) * p(b));
}

TEST_CASE("Psi under evaluation contexts") {
  std::map<std::string, TermPtr> defs{{"omega", support::omega()}, {"omega_nat", corpus::mk_omega(ty::nat())}};
  const char* contexts[] = {"ifz [.] then () else (() (+) omega)", "(fn x => ifz pred x then omega else ()) [.]",
                            "unfold (fold [.])"};
  const char* terms[] = {"rand 3", "(fn y => succ y) (rand 2)", "1 (+) unfold (fold 2)"};
  for (const char* cs : contexts) {
    TermPtr ctx = substitute(parse_term(cs, true), defs);
    for (const char* es : terms) {
      TermPtr e = parse_term(es);
      std::vector<std::pair<Config, Rational>> vs;
      value_paths(make_config(e), 12, 1, vs);
      for (unsigned k = 0; k <= 6; ++k) {
        Rational rhs = 0;
        for (const auto& [v, w] : vs) rhs += w * psi_stratified(make_config(plug_hole(ctx, v.term)), k);
        CHECK(psi_stratified(make_config(plug_hole(ctx, e)), k) <= rhs);
      }
    }
  }
}
