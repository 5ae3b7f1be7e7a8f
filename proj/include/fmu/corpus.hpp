#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fmu/rational.hpp"
#include "fmu/term.hpp"
#include "fmu/type.hpp"

namespace fmu::corpus {

// Parses `source` and replaces the free variables named in `defs`.
TermPtr build(const std::string& source, const std::map<std::string, TermPtr>& defs = {});

TypePtr bool_type();
TypePtr list_type(const TypePtr& elem);
TermPtr boolean(bool b);

TermPtr mk_fix();                            // all a. all b. ((a -> b) -> a -> b) -> a -> b
TermPtr mk_omega(const TypePtr& t);          // diverges, a two-config cycle
TermPtr mk_fix_omega();                      // fix (fn f => fn x => f x) (), at unit
TermPtr mk_leq();                            // nat -> nat -> bool
TermPtr mk_div2();                           // nat -> nat
TermPtr mk_er_rational(uint64_t k, uint64_t n);    // unit -> unit, P = k/n
TermPtr mk_er_sequence(const std::vector<Rational>& q);  // unit -> unit, P = sup q
TermPtr mk_tr(uint64_t k, uint64_t n);       // all a. a -> a
TermPtr mk_tr_body(uint64_t k, uint64_t n);  // fn (x : a) => e_r (); x, with `a` free
TermPtr mk_von_neumann(uint64_t k, uint64_t n);    // unit -> bool
TermPtr mk_fair_coin();                      // fn _ => true (+) false
TermPtr mk_hesitant();                       // all a. a -> a
std::pair<TermPtr, TermPtr> mk_counters();   // both at counter_type()
TypePtr counter_type();

// Lists.
TermPtr mk_nil(const TypePtr& elem);
TermPtr mk_cons();                            // all a. a -> [a] -> [a]
TermPtr mk_map();                             // all a. all b. (a -> b) -> [a] -> [b]
TermPtr mk_list(const std::vector<TermPtr>& elems, const TypePtr& elem);
TermPtr mk_compose(const TermPtr& f, const TermPtr& g);  // fn x => f (g x)

// One-time pad, all at bool -> bool -> bool except the helpers.
TermPtr mk_not();
TermPtr mk_xor();
TermPtr mk_gen();
TermPtr mk_exp();
TermPtr mk_rnd();
TermPtr mk_exp1();
TermPtr mk_exp2();

// Two-call pair: tfn (t_{1/2} (+) t_{1/3}) and tfn t_{5/12}.
TermPtr mk_choice_of_tr();
TermPtr mk_tr_512();

struct ProgramSpec {
  std::string name;
  std::string params;
  TermPtr term;
  TypePtr type;
  std::string description;
};

// Every named corpus program with default parameters.
const std::vector<ProgramSpec>& programs();
// Builds a named program; `params` are numbers or rationals, e.g. {"1","3"}.
ProgramSpec make_program(const std::string& name, const std::vector<std::string>& params = {});
std::vector<std::string> program_names();

}  // namespace fmu::corpus
