#include <doctest.h>

#include "fmu/context.hpp"
#include "fmu/corpus.hpp"
#include "fmu/parser.hpp"
#include "fmu/pretty.hpp"
#include "fmu/typecheck.hpp"
#include "support.hpp"

using namespace fmu;

static TypePtr synth(const std::string& src) { return typecheck(parse_term(src)); }
static bool has(const TypeError& e, const std::string& s) { return std::string(e.what()).find(s) != std::string::npos; }

TEST_CASE("well-formed types") {
  TypePtr a = ty::free("a");
  CHECK(check_type({"a"}, ty::arrow(a, a)));
  CHECK_FALSE(check_type({}, a));
  CHECK(check_type({}, parse_type("all a. a -> a")));
  CHECK_FALSE(check_type({"b"}, parse_type("all a. a -> b -> c")));
}

TEST_CASE("typing examples") {
  CHECK(type_equal(synth("rand 3"), ty::nat()));
  CHECK(type_equal(synth("tfn (fn (x:a) => x)"), parse_type("all a. a -> a")));
  CHECK(type_equal(synth("tfn a. fn (x:a) => x"), parse_type("all a. a -> a")));
  CHECK(type_equal(synth("(fn (x : nat) => succ x) 2"), ty::nat()));
  CHECK(type_equal(synth("let x = 1 in (x, ())"), parse_type("nat * unit")));
  CHECK(type_equal(synth("ref 1"), ty::ref_nat()));
  CHECK(type_equal(synth("let r = ref 1 in r := succ !r; !r"), ty::nat()));
  CHECK(type_equal(synth("(tfn fn (x : a) => x) [nat] 3"), ty::nat()));
  CHECK(type_equal(synth("fold (inl ()) at mu s. unit + nat * s"), parse_type("mu s. unit + nat * s")));
  CHECK(type_equal(synth("pack (1, fn (x : nat) => x) as ex a. a * (a -> nat)"), parse_type("ex a. a * (a -> nat)")));
  CHECK(type_equal(synth("unpack (pack (1, fn (x : nat) => x) as ex a. a * (a -> nat)) as p in (snd p) (fst p)"),
                   ty::nat()));
  CHECK(type_equal(synth("match inl () with inl x => 1 | inr y => 2"), ty::nat()));
  CHECK(type_equal(synth("() (+) ()"), ty::unit()));
}

TEST_CASE("checking mode infers what synthesis cannot") {
  CHECK_NOTHROW(typecheck(parse_term("fn x => x"), parse_type("nat -> nat")));
  CHECK_NOTHROW(typecheck(parse_term("fold (inl ())"), parse_type("mu s. unit + nat * s")));
  CHECK_NOTHROW(typecheck(parse_term("inl ()"), parse_type("unit + nat")));
  CHECK_NOTHROW(typecheck(parse_term("pack (1, fn (x : nat) => x)"), parse_type("ex a. a * (a -> nat)")));
}

TEST_CASE("type errors") {
  try {
    synth("fn (x:nat) => x x");
    FAIL("accepted self-application");
  } catch (const TypeError& e) {
    CHECK(has(e, "x x"));
    CHECK(has(e, "nat"));
  }
  try {
    typecheck(parse_term("succ ()"), ty::nat());
    FAIL("accepted succ ()");
  } catch (const TypeError& e) {
    CHECK(has(e, "unit"));
    CHECK(has(e, "nat"));
  }
  CHECK_THROWS_AS(synth("fn x => x"), TypeError);
  CHECK_THROWS_AS(synth("pack (1, 2)"), TypeError);
  CHECK_THROWS_AS(synth("tfn fn (x:a) => x y"), TypeError);
  CHECK_THROWS_AS(synth("x"), TypeError);
  CHECK_THROWS_AS(synth("unpack (pack 1 as ex a. a) as x in x"), TypeError);
  CHECK_THROWS_AS(typecheck(parse_term("(1, ())"), parse_type("nat * nat")), TypeError);
  CHECK_THROWS_AS(typecheck(tm::loc(0), ty::nat()), TypeError);
}

TEST_CASE("free variables from options") {
  CheckOptions o;
  o.free_vars["h"] = ty::nat();
  CHECK(type_equal(typecheck(parse_term("succ h"), nullptr, o), ty::nat()));
}

TEST_CASE("erasure coherence: elaborated terms check at the same type") {
  for (const auto& p : corpus::programs()) {
    CAPTURE(p.name);
    Elaboration el = elaborate(p.term, p.type);
    CHECK(term_equal(el.term, p.term));
    CHECK(type_equal(typecheck(el.term), p.type));
  }
  support::Gen g(5);
  for (int i = 0; i < 100; ++i) {
    TypePtr t = g.pick_type();
    TermPtr e = g.at(t, 5);
    Elaboration el = elaborate(e, t);
    CHECK(type_equal(typecheck(el.term, t), t));
  }
}

static void preservation_along(const TermPtr& start, const TypePtr& t, int steps) {
  CheckOptions lenient;
  lenient.lenient = true;
  Config c = make_config(elaborate(start, t).term);
  for (int s = 0; s < steps && status(c) == Status::Live; ++s) {
    auto succ = step_successors(c);
    for (const auto& n : succ) {
      CAPTURE(pretty_config(n.target));
      CHECK_NOTHROW(typecheck(n.target.term, t, lenient));
    }
    c = succ[static_cast<size_t>(s * 7) % succ.size()].target;
  }
}

TEST_CASE("preservation and progress on reachable configs") {
  support::Gen g(9);
  for (int i = 0; i < 60; ++i) {
    TypePtr t = g.pick_type();
    preservation_along(g.at(t, 5), t, 40);
  }
  for (const char* name : {"vn_run", "map_fused", "map_split"}) {
    auto p = corpus::make_program(name);
    preservation_along(p.term, p.type, 300);
  }
  preservation_along(support::term("let r = ref 1 in r := succ !r; (!r, ref 3)"), parse_type("nat * ref nat"), 30);
}

TEST_CASE("well-typed programs never get stuck") {
  support::Gen g(21);
  for (int i = 0; i < 100; ++i) {
    ChainGraph gr = build_chain(make_config(g.at(g.pick_type(), 5)), 2000);
    for (auto s : gr.status) CHECK(s != Status::Stuck);
  }
  for (const char* name : {"vn_run", "map_fused", "er_seq"}) {
    auto p = corpus::make_program(name);
    TermPtr e = p.type->tag == TypeTag::Arrow ? tm::app(p.term, tm::unit()) : p.term;
    ChainGraph gr = build_chain(make_config(e), 50000);
    for (auto s : gr.status) CHECK(s != Status::Stuck);
  }
}
