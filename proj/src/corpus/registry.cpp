#include <functional>
#include <stdexcept>

#include "fmu/corpus.hpp"
#include "fmu/json_out.hpp"
#include "fmu/parser.hpp"
#include "fmu/typecheck.hpp"

namespace fmu::corpus {

namespace {

struct Entry {
  std::string name;
  std::vector<std::string> defaults;
  std::string type;  // concrete syntax, `bool` = unit + unit
  std::string description;
  std::function<TermPtr(const std::vector<std::string>&)> make;
};

uint64_t as_num(const std::string& s) {
  size_t pos = 0;
  unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not a numeral: " + s);
  return v;
}

TermPtr unit_list() {
  return mk_list({tm::unit(), tm::unit()}, ty::unit());
}

TermPtr choice_of_consts() { return build("(fn (x : unit) => 1) (+) (fn (x : unit) => 2)"); }

TermPtr identity_unit() { return build("fn (x : unit) => x"); }

TermPtr map_at(const TypePtr& a, const TypePtr& b) { return tm::tapp(tm::tapp(mk_map(), a), b); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = {
      {"fix", {}, "all a. all b. ((a -> b) -> a -> b) -> a -> b", "call-by-value fixed point", [](auto&) { return mk_fix(); }},
      {"omega", {}, "unit", "divergence at unit", [](auto&) { return mk_omega(ty::unit()); }},
      {"omega_fix", {}, "unit", "divergence through fix", [](auto&) { return mk_fix_omega(); }},
      {"leq", {}, "nat -> nat -> bool", "m <= n on numerals", [](auto&) { return mk_leq(); }},
      {"div2", {}, "nat -> nat", "halving, rounded down, at least 1", [](auto&) { return mk_div2(); }},
      {"er", {"1", "2"}, "unit -> unit", "terminates with probability k/n",
       [](auto& p) { return mk_er_rational(as_num(p.at(0)), as_num(p.at(1))); }},
      {"er_seq", {"1/4", "1/2"}, "unit -> unit", "terminates with the supremum of a rational sequence",
       [](auto& p) {
         std::vector<Rational> q;
         for (const auto& s : p) q.push_back(parse_rational(s));
         return mk_er_sequence(q);
       }},
      {"tr", {"1", "2"}, "all a. a -> a", "identity that terminates with probability k/n",
       [](auto& p) { return mk_tr(as_num(p.at(0)), as_num(p.at(1))); }},
      {"vn", {"1", "3"}, "unit -> bool", "fair coin from a k/n-biased one",
       [](auto& p) { return mk_von_neumann(as_num(p.at(0)), as_num(p.at(1))); }},
      {"vn_run", {"1", "3"}, "bool", "the von Neumann coin applied to ()",
       [](auto& p) { return tm::app(mk_von_neumann(as_num(p.at(0)), as_num(p.at(1))), tm::unit()); }},
      {"fair_coin", {}, "unit -> bool", "fn _ => true (+) false", [](auto&) { return mk_fair_coin(); }},
      {"hesitant", {}, "all a. a -> a", "identity that may retry forever", [](auto&) { return mk_hesitant(); }},
      {"not", {}, "bool -> bool", "negation", [](auto&) { return mk_not(); }},
      {"xor", {}, "bool -> bool -> bool", "exclusive or", [](auto&) { return mk_xor(); }},
      {"gen", {}, "bool", "uniform key bit", [](auto&) { return mk_gen(); }},
      {"exp", {}, "bool -> bool -> bool", "one-time pad on a chosen message", [](auto&) { return mk_exp(); }},
      {"rnd", {}, "bool -> bool -> bool", "uniform bit ignoring both messages", [](auto&) { return mk_rnd(); }},
      {"exp1", {}, "bool -> bool -> bool", "pad on the first message", [](auto&) { return mk_exp1(); }},
      {"exp2", {}, "bool -> bool -> bool", "pad on the second message", [](auto&) { return mk_exp2(); }},
      {"counter1", {}, "ex a. (unit -> a) * (a -> nat) * (a -> unit)", "counter stepping by 1",
       [](auto&) { return mk_counters().first; }},
      {"counter2", {}, "ex a. (unit -> a) * (a -> nat) * (a -> unit)", "counter stepping by 2, read halved",
       [](auto&) { return mk_counters().second; }},
      {"cons", {}, "all a. a -> (mu s. unit + a * s) -> mu s. unit + a * s", "list constructor",
       [](auto&) { return mk_cons(); }},
      {"map", {}, "all a. all b. (a -> b) -> (mu s. unit + a * s) -> mu s. unit + b * s", "list map",
       [](auto&) { return mk_map(); }},
      {"tr_mix", {}, "all a. a -> a", "tfn (t_1/2 (+) t_1/3)", [](auto&) { return mk_choice_of_tr(); }},
      {"tr_512", {}, "all a. a -> a", "tfn t_5/12", [](auto&) { return mk_tr_512(); }},
      {"map_fused", {}, "mu s. unit + nat * s", "map (f o g) [(), ()] with f a choice of constants",
       [](auto&) {
         return tm::app(map_at(ty::unit(), ty::nat()), mk_compose(choice_of_consts(), identity_unit()),
                        unit_list());
       }},
      {"map_split", {}, "mu s. unit + nat * s", "(map f o map g) [(), ()] with f a choice of constants",
       [](auto&) {
         TermPtr inner = tm::app(map_at(ty::unit(), ty::unit()), identity_unit(), unit_list());
         return tm::app(map_at(ty::unit(), ty::nat()), choice_of_consts(), inner);
       }},
  };
  return all;
}

const Entry& find(const std::string& name) {
  for (const auto& e : entries())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown corpus program: " + name);
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

ProgramSpec make_program(const std::string& name, const std::vector<std::string>& params) {
  const Entry& e = find(name);
  const auto& p = params.empty() ? e.defaults : params;
  ProgramSpec spec;
  spec.name = name;
  spec.params = join(p);
  spec.term = e.make(p);
  spec.type = subst_free_type(parse_type(e.type), "bool", bool_type());
  spec.description = e.description;
  try {
    typecheck(spec.term, spec.type);
  } catch (const TypeError& err) {
    throw std::logic_error("corpus program " + name + " does not typecheck: " + err.what());
  }
  return spec;
}

const std::vector<ProgramSpec>& programs() {
  static const std::vector<ProgramSpec> all = [] {
    std::vector<ProgramSpec> v;
    for (const auto& e : entries()) v.push_back(make_program(e.name));
    return v;
  }();
  return all;
}

std::vector<std::string> program_names() {
  std::vector<std::string> v;
  for (const auto& e : entries()) v.push_back(e.name);
  return v;
}

}  // namespace fmu::corpus
