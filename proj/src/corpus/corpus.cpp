#include "fmu/corpus.hpp"

#include <stdexcept>

#include "fmu/parser.hpp"

namespace fmu::corpus {

namespace {

std::string num(uint64_t n) { return std::to_string(n); }

void check_kn(uint64_t k, uint64_t n, bool strict) {
  if (k < 1 || n < 1 || k > n || (strict && k == n))
    throw std::invalid_argument("bad parameters k=" + num(k) + " n=" + num(n));
}

// Offset-encoded naturals: m is represented by the numeral m + 1, so that
// zero is available. Rationals are pairs of encoded naturals.
const char* kRat = "nat * nat";
const char* kSeq = "mu s. unit + (nat * nat) * s";

TermPtr enc_add() {
  return build(
      "fix [nat] [nat -> nat] (fn (self : nat -> nat -> nat) => fn (a : nat) => fn (b : nat) =>"
      "  ifz a then b else succ (self (pred a) b))",
      {{"fix", mk_fix()}});
}

TermPtr enc_mul() {
  return build(
      "fix [nat] [nat -> nat] (fn (self : nat -> nat -> nat) => fn (a : nat) => fn (b : nat) =>"
      "  ifz a then 1 else add b (self (pred a) b))",
      {{"fix", mk_fix()}, {"add", enc_add()}});
}

TermPtr enc_sub() {
  return build(
      "fix [nat] [nat -> nat] (fn (self : nat -> nat -> nat) => fn (a : nat) => fn (b : nat) =>"
      "  ifz b then a else self (pred a) (pred b))",
      {{"fix", mk_fix()}});
}

// fn q1 => fn qi => (qi - q1) / (1 - q1), computed as n / (bi (b1 - a1))
// with n = ai b1 - a1 bi; a zero numerator is normalized to 0/1.
TermPtr renormalize() {
  std::string r = kRat;
  return build("fn (q1 : " + r + ") => fn (qi : " + r + ") =>"
               "  let n = sub (mul (fst qi) (snd q1)) (mul (fst q1) (snd qi)) in"
               "  ifz n then (1, 2) else (n, mul (snd qi) (sub (snd q1) (fst q1)))",
               {{"sub", enc_sub()}, {"mul", enc_mul()}});
}

TermPtr rational_pair(const Rational& q) {
  if (q < 0 || q > 1) throw std::invalid_argument("rational outside [0,1]: " + to_string(q));
  if (!q.get_num().fits_ulong_p() || !q.get_den().fits_ulong_p())
    throw std::invalid_argument("rational too large: " + to_string(q));
  return tm::pair(tm::num(q.get_num().get_ui() + 1), tm::num(q.get_den().get_ui() + 1));
}

}  // namespace

TermPtr build(const std::string& source, const std::map<std::string, TermPtr>& defs) {
  TermPtr t = parse_term(source);
  t = substitute_types(t, {{"bool", bool_type()}});
  return defs.empty() ? t : substitute(t, defs);
}

TypePtr bool_type() { return ty::boolean(); }

TypePtr list_type(const TypePtr& elem) {
  return ty::mu_raw("s", ty::sum(ty::unit(), ty::prod(elem, ty::bound(0))));
}

TermPtr boolean(bool b) { return b ? tm::tt() : tm::ff(); }

TermPtr mk_fix() {
  return build(
      "tfn a. tfn b. fn (f : (a -> b) -> a -> b) => fn (z : a) =>"
      "  (fn (y : mu r. r -> a -> b) => let y1 = unfold y in f (fn (x : a) => y1 y x))"
      "  (fold (fn (y : mu r. r -> a -> b) => let y1 = unfold y in f (fn (x : a) => y1 y x)))"
      "  z");
}

TermPtr mk_omega(const TypePtr& t) {
  TermPtr body = build("(fn (x : mu r. r -> T) => (unfold x) x) (fold (fn (x : mu r. r -> T) => (unfold x) x))");
  return substitute_types(body, {{"T", t}});
}

TermPtr mk_fix_omega() {
  return build("fix [unit] [unit] (fn (f : unit -> unit) => fn (x : unit) => f x) ()", {{"fix", mk_fix()}});
}

TermPtr mk_leq() {
  return build(
      "fix [nat] [nat -> bool] (fn (self : nat -> nat -> bool) => fn (m : nat) => fn (n : nat) =>"
      "  ifz m then true else ifz n then false else self (pred m) (pred n))",
      {{"fix", mk_fix()}, {"true", tm::tt()}, {"false", tm::ff()}});
}

TermPtr mk_div2() {
  return build(
      "fix [nat] [nat] (fn (self : nat -> nat) => fn (x : nat) =>"
      "  ifz pred x then 1 else ifz pred (pred x) then 1 else succ (self (pred (pred x))))",
      {{"fix", mk_fix()}});
}

TermPtr mk_er_rational(uint64_t k, uint64_t n) {
  check_kn(k, n, false);
  return build("fn (u : unit) => let y = rand " + num(n) + " in match leq y " + num(k) +
                   " with inl _ => () | inr _ => omega",
               {{"leq", mk_leq()}, {"omega", mk_omega(ty::unit())}});
}

TermPtr mk_er_sequence(const std::vector<Rational>& q) {
  if (q.empty()) throw std::invalid_argument("empty sequence");
  for (size_t i = 1; i < q.size(); ++i)
    if (q[i] < q[i - 1]) throw std::invalid_argument("sequence must be nondecreasing");
  std::string seq = kSeq;
  TermPtr lst = build("fold (inl ()) at " + seq);
  for (size_t i = q.size(); i-- > 0;)
    lst = tm::fold(tm::inr(tm::pair(rational_pair(q[i]), lst)), parse_type(seq));
  // The head is consumed each round; a one-element list repeats its element.
  TermPtr tail = build("fn (r : " + seq + ") => match unfold r with inl _ => r | inr p =>"
                       "  match unfold (snd p) with"
                       "    inl _ => fold (inr (renorm (fst p) (fst p), fold (inl ()) at " + seq + ")) at " + seq +
                       "  | inr _ => map [" + kRat + "] [" + kRat + "] (renorm (fst p)) (snd p)",
                       {{"renorm", renormalize()}, {"map", mk_map()}});
  TermPtr phi = build("fn (f : (" + seq + ") -> unit) => fn (r : " + seq + ") => match unfold r with"
                      "  inl _ => ()"
                      "| inr p => let y = rand (pred (snd (fst p))) in"
                      "    match leq (succ y) (fst (fst p)) with inl _ => () | inr _ => f (tail r)",
                      {{"leq", mk_leq()}, {"tail", tail}});
  return build("fn (u : unit) => fix [" + seq + "] [unit] phi q",
               {{"fix", mk_fix()}, {"phi", phi}, {"q", lst}});
}

TermPtr mk_tr_body(uint64_t k, uint64_t n) {
  return build("fn (x : a) => er (); x", {{"er", mk_er_rational(k, n)}});
}

TermPtr mk_tr(uint64_t k, uint64_t n) { return tm::tfun(mk_tr_body(k, n), "a"); }

TermPtr mk_von_neumann(uint64_t k, uint64_t n) {
  check_kn(k, n, true);
  TermPtr tp = build("fn (u : unit) => let y = rand " + num(n) + " in leq y " + num(k), {{"leq", mk_leq()}});
  return build(
      "fix [unit] [bool] (fn (f : unit -> bool) => fn (u : unit) =>"
      "  let x = tp () in let y = tp () in"
      "  match (match x with inl _ => y | inr _ => (match y with inl _ => false | inr _ => true)) with"
      "    inl _ => f ()"
      "  | inr _ => x)",
      {{"fix", mk_fix()}, {"tp", tp}, {"true", tm::tt()}, {"false", tm::ff()}});
}

TermPtr mk_fair_coin() {
  return build("fn (u : unit) => true (+) false", {{"true", tm::tt()}, {"false", tm::ff()}});
}

TermPtr mk_hesitant() {
  return build("tfn a. fix [a] [a] (fn (f : a -> a) => fn (x : a) => x (+) f x)", {{"fix", mk_fix()}});
}

TypePtr counter_type() { return parse_type("ex a. (unit -> a) * (a -> nat) * (a -> unit)"); }

std::pair<TermPtr, TermPtr> mk_counters() {
  std::string t = pretty_type(counter_type());
  TermPtr c1 = build("pack (fn (u : unit) => ref 1, (fn (x : ref nat) => !x, fn (x : ref nat) => () (+) (x := succ !x)))"
                     " as " + t);
  TermPtr c2 = build(
      "pack (fn (u : unit) => ref 2, (fn (x : ref nat) => div2 (!x),"
      " fn (x : ref nat) => () (+) (x := succ (succ !x)))) as " + t,
      {{"div2", mk_div2()}});
  return {c1, c2};
}

TermPtr mk_nil(const TypePtr& elem) { return tm::fold(tm::inl(tm::unit()), list_type(elem)); }

TermPtr mk_cons() {
  return build("tfn a. fn (x : a) => fn (xs : mu s. unit + a * s) => fold (inr (x, xs)) at mu s. unit + a * s");
}

TermPtr mk_map() {
  return build(
      "tfn a. tfn b. fn (f : a -> b) =>"
      "  fix [mu s. unit + a * s] [mu s. unit + b * s]"
      "    (fn (self : (mu s. unit + a * s) -> mu s. unit + b * s) => fn (xs : mu s. unit + a * s) =>"
      "      match unfold xs with"
      "        inl _ => fold (inl ()) at mu s. unit + b * s"
      "      | inr p => fold (inr (f (fst p), self (snd p))) at mu s. unit + b * s)",
      {{"fix", mk_fix()}});
}

TermPtr mk_list(const std::vector<TermPtr>& elems, const TypePtr& elem) {
  TypePtr lt = list_type(elem);
  TermPtr out = mk_nil(elem);
  for (size_t i = elems.size(); i-- > 0;) out = tm::fold(tm::inr(tm::pair(elems[i], out)), lt);
  return out;
}

TermPtr mk_compose(const TermPtr& f, const TermPtr& g) {
  return build("fn x => f (g x)", {{"f", f}, {"g", g}});
}

namespace {
std::map<std::string, TermPtr> bools() { return {{"true", tm::tt()}, {"false", tm::ff()}}; }
std::map<std::string, TermPtr> pad_defs() {
  auto d = bools();
  d["xor"] = mk_xor();
  d["gen"] = mk_gen();
  return d;
}
}  // namespace

TermPtr mk_not() { return build("fn (x : bool) => match x with inl _ => false | inr _ => true", bools()); }

TermPtr mk_xor() {
  auto d = bools();
  d["not"] = mk_not();
  return build("fn (x : bool) => fn (y : bool) => match x with inl _ => not y | inr _ => y", d);
}

TermPtr mk_gen() { return build("true (+) false", bools()); }

TermPtr mk_exp() { return build("fn (x : bool) => fn (y : bool) => xor (x (+) y) gen", pad_defs()); }
TermPtr mk_rnd() { return build("fn (x : bool) => fn (y : bool) => gen", pad_defs()); }
TermPtr mk_exp1() { return build("fn (x : bool) => fn (y : bool) => xor x gen", pad_defs()); }
TermPtr mk_exp2() { return build("fn (x : bool) => fn (y : bool) => xor y gen", pad_defs()); }

TermPtr mk_choice_of_tr() { return tm::tfun(tm::choice(mk_tr_body(1, 2), mk_tr_body(1, 3)), "a"); }

TermPtr mk_tr_512() { return mk_tr(5, 12); }

}  // namespace fmu::corpus
