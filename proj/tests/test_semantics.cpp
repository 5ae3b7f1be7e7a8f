#include <doctest.h>

#include <numeric>

#include "fmu/corpus.hpp"
#include "fmu/pretty.hpp"
#include "support.hpp"

using namespace fmu;
using support::cfg;

static bool same_steps(const std::vector<WeightedStep>& a, const std::vector<WeightedStep>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].weight != b[i].weight || a[i].kind != b[i].kind || !config_equal(a[i].target, b[i].target)) return false;
  return true;
}

TEST_CASE("step examples") {
  auto r = step_successors(cfg("rand 2"));
  REQUIRE(r.size() == 2);
  CHECK(r[0].weight == Rational(1, 2));
  CHECK(r[1].weight == Rational(1, 2));
  CHECK(term_equal(r[0].target.term, tm::num(1)));
  CHECK(term_equal(r[1].target.term, tm::num(2)));
  CHECK(r[0].kind == StepKind::Choice);

  auto p = step_successors(cfg("pred 1"));
  REQUIRE(p.size() == 1);
  CHECK(p[0].weight == 1);
  CHECK(term_equal(p[0].target.term, tm::num(1)));
  CHECK(p[0].kind == StepKind::Other);

  auto a = step_successors(cfg("ref 5"));
  REQUIRE(a.size() == 1);
  CHECK(term_equal(a[0].target.term, tm::loc(0)));
  CHECK(a[0].target.heap == Heap{5});

  auto one = step_successors(cfg("rand 1"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == StepKind::Choice);

  auto uf = step_successors(cfg("unfold (fold ())"));
  REQUIRE(uf.size() == 1);
  CHECK(uf[0].kind == StepKind::UnfoldFold);

  CHECK(step_successors(cfg("()")).empty());
  CHECK(step_successors(cfg("fst ()")).empty());
  CHECK(status(cfg("fst ()")) == Status::Stuck);
}

TEST_CASE("ifz branches on the numeral 1 only") {
  auto s = step_successors(cfg("ifz 1 then () else 3"));
  CHECK(term_equal(s[0].target.term, tm::unit()));
  s = step_successors(cfg("ifz 2 then () else 3"));
  CHECK(term_equal(s[0].target.term, tm::num(3)));
  s = step_successors(cfg("ifz 7 then () else 3"));
  CHECK(term_equal(s[0].target.term, tm::num(3)));
}

TEST_CASE("heap lookup and assignment") {
  Config c = cfg("let r = ref 1 in r := 4; !r");
  RunResult r = sample_run(c, 1, 100);
  REQUIRE(r.outcome == RunOutcome::Terminated);
  CHECK(term_equal(r.config.term, tm::num(4)));
  Config two = cfg("let a = ref 1 in let b = ref 2 in (!a, !b)");
  RunResult t = sample_run(two, 1, 100);
  CHECK(pretty_config(t.config).find("(1, 2)") != std::string::npos);
}

TEST_CASE("cuff normalization") {
  CuffResult v = cuff_normalize(cfg("(fn x => x) ()"), 200);
  CHECK(v.outcome == CuffOutcome::Value);
  CHECK(term_equal(v.config.term, tm::unit()));
  CHECK(v.steps == 1);

  Config c = cfg("ifz (rand 2) then () else ()");
  CuffResult h = cuff_normalize(c, 200);
  CHECK(h.outcome == CuffOutcome::AtChoiceOrUnfold);
  CHECK(config_equal(h.config, c));

  Config u = cfg("unfold (fold ())");
  CuffResult w = cuff_normalize(u, 200);
  CHECK(w.outcome == CuffOutcome::AtChoiceOrUnfold);
  CHECK(config_equal(w.config, u));

  CHECK(cuff_normalize(cfg("fst ()"), 200).outcome == CuffOutcome::Stuck);
  CHECK(cuff_normalize(cfg("succ (succ (succ 1))"), 2).outcome == CuffOutcome::BudgetExceeded);
}

TEST_CASE("sampled runs") {
  RunResult a = sample_run(cfg("rand 2"), 42, 10);
  REQUIRE(a.outcome == RunOutcome::Terminated);
  CHECK((term_equal(a.config.term, tm::num(1)) || term_equal(a.config.term, tm::num(2))));
  for (uint64_t s = 0; s < 20; ++s)
    CHECK(config_equal(sample_run(cfg("rand 9"), s, 10).config, sample_run(cfg("rand 9"), s, 10).config));
  std::set<uint64_t> seen;
  for (uint64_t s = 0; s < 40; ++s) seen.insert(sample_run(cfg("rand 3"), s, 10).config.term->n);
  CHECK(seen.size() == 3);

  CHECK(sample_run(make_config(support::omega()), 3, 100).outcome == RunOutcome::FuelExhausted);
  RunResult u = sample_run(cfg("()"), 5, 1);
  CHECK(u.outcome == RunOutcome::Terminated);
  CHECK(u.steps == 0);
  CHECK(sample_run(cfg("fst ()"), 5, 10).outcome == RunOutcome::StuckAt);
}

static std::vector<Config> reachable_from_corpus(size_t per_program) {
  std::vector<Config> out;
  for (const char* name : {"vn_run", "map_fused", "map_split", "hesitant", "er_seq", "fair_coin"}) {
    auto p = corpus::make_program(name);
    TermPtr e = p.type->tag == TypeTag::Arrow ? tm::app(p.term, tm::unit()) : p.term;
    ChainGraph g = build_chain_serial(make_config(erase(e)), per_program);
    out.insert(out.end(), g.nodes.begin(), g.nodes.end());
  }
  ChainGraph g = build_chain_serial(make_config(support::term(
      "let r = ref 1 in let s = ref 2 in r := rand 3; s := succ !r; (!r, ref !s)")), 2000);
  out.insert(out.end(), g.nodes.begin(), g.nodes.end());
  return out;
}

TEST_CASE("stochasticity and determinism outside choice") {
  for (const auto& c : reachable_from_corpus(400)) {
    auto succ = step_successors(c);
    if (status(c) != Status::Live) {
      CHECK(succ.empty());
      continue;
    }
    Rational sum = 0;
    for (const auto& s : succ) {
      CHECK(s.weight > 0);
      CHECK(s.weight <= 1);
      sum += s.weight;
    }
    CHECK(sum == 1);
    if (succ.size() > 1)
      for (const auto& s : succ) CHECK(s.kind == StepKind::Choice);
  }
}

TEST_CASE("step relation agrees with decompose/plug") {
  for (const auto& c : reachable_from_corpus(300)) {
    CAPTURE(pretty_config(c));
    CHECK(same_steps(step_successors(c), step_via_decompose(c)));
  }
}

TEST_CASE("Markov property: canonicalize-then-step equals step-then-canonicalize") {
  std::mt19937_64 rng(17);
  for (const auto& c : reachable_from_corpus(300)) {
    if (c.heap.size() < 2) continue;
    std::vector<uint64_t> perm(c.heap.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Heap h(c.heap.size());
    for (size_t i = 0; i < perm.size(); ++i) h[perm[i]] = c.heap[i];
    Config shuffled = make_config(rename_locations(c.term, perm), h);
    CHECK(config_equal(shuffled, c));
    CHECK(same_steps(step_successors(shuffled), step_successors(c)));
  }
}

TEST_CASE("configs are canonical") {
  for (const auto& c : reachable_from_corpus(200)) {
    auto locs = locations_in(c.term);
    for (size_t i = 0; i < locs.size(); ++i) CHECK(locs[i] == i);
    for (auto l : locs) CHECK(l < c.heap.size());
  }
}
