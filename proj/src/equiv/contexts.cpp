#include <unordered_set>

#include "fmu/corpus.hpp"
#include "fmu/equiv.hpp"
#include "fmu/parser.hpp"
#include "fmu/typecheck.hpp"

namespace fmu {

namespace {

const char* kHoleVar = "hole#";

struct Frame {
  TermPtr frame;  // contains one Hole
  TypePtr result;
};

std::vector<TermPtr> seeds_for(const TypePtr& t, const SeedPool& pool, int fuel);

std::vector<TermPtr> take(std::vector<TermPtr> v, size_t n) {
  if (v.size() > n) v.resize(n);
  return v;
}

std::vector<TermPtr> seeds_for(const TypePtr& t, const SeedPool& pool, int fuel) {
  std::vector<TermPtr> out;
  auto push = [&](const TermPtr& v) {
    for (const auto& o : out)
      if (term_equal(o, v)) return;
    out.push_back(v);
  };
  for (const auto& [v, vt] : pool.values)
    if (type_equal(vt, t)) push(v);
  if (fuel > 0) {
    switch (t->tag) {
      case TypeTag::Unit:
        push(tm::unit());
        break;
      case TypeTag::Nat:
        for (uint64_t n = 1; n <= 3; ++n) push(tm::num(n));
        break;
      case TypeTag::Sum:
        for (const auto& a : take(seeds_for(t->lhs, pool, fuel - 1), 2)) push(tm::inl(a));
        for (const auto& b : take(seeds_for(t->rhs, pool, fuel - 1), 2)) push(tm::inr(b));
        break;
      case TypeTag::Prod:
        for (const auto& a : take(seeds_for(t->lhs, pool, fuel - 1), 2))
          for (const auto& b : take(seeds_for(t->rhs, pool, fuel - 1), 2)) push(tm::pair(a, b));
        break;
      case TypeTag::Arrow:
        if (type_equal(t->lhs, t->rhs)) push(tm::fun_raw("x", t->lhs, tm::bvar(0, "x")));
        for (const auto& b : take(seeds_for(t->rhs, pool, fuel - 1), 2)) push(tm::fun_raw("x", t->lhs, b));
        break;
      case TypeTag::All: {
        TypePtr a = ty::free("a");
        for (const auto& s : take(seeds_for(open_type(t->lhs, a), pool, fuel - 1), 2)) push(tm::tfun(s, "a"));
        break;
      }
      case TypeTag::Ex:
        for (const auto& s : take(seeds_for(open_type(t->lhs, ty::unit()), pool, fuel - 1), 2)) push(tm::pack(s, t));
        break;
      case TypeTag::Mu:
        for (const auto& s : take(seeds_for(open_type(t->lhs, t), pool, fuel - 1), 2)) push(tm::fold(s, t));
        break;
      default:
        break;
    }
  }
  return take(out, pool.per_type);
}

std::vector<Frame> frames(const TypePtr& t, const SeedPool& pool) {
  std::vector<Frame> out;
  TermPtr h = tm::hole();
  TypePtr unit = ty::unit();
  switch (t->tag) {
    case TypeTag::Nat:
      out.push_back({tm::succ(h), t});
      out.push_back({tm::pred(h), t});
      out.push_back({tm::rand(h), t});
      out.push_back({tm::ifz(h, tm::unit(), corpus::mk_omega(unit)), unit});
      out.push_back({tm::ifz(h, corpus::mk_omega(unit), tm::unit()), unit});
      break;
    case TypeTag::Prod:
      out.push_back({tm::proj(1, h), t->lhs});
      out.push_back({tm::proj(2, h), t->rhs});
      break;
    case TypeTag::Sum:
      out.push_back({tm::match_raw(h, "x", tm::bvar(0, "x"), "y", corpus::mk_omega(t->lhs)), t->lhs});
      out.push_back({tm::match_raw(h, "x", corpus::mk_omega(t->rhs), "y", tm::bvar(0, "y")), t->rhs});
      break;
    case TypeTag::Arrow: {
      auto args = seeds_for(t->lhs, pool, 3);
      for (const auto& v : args) out.push_back({tm::app(h, v), t->rhs});
      // Call the same function twice.
      auto two = take(args, 2);
      for (const auto& v1 : two)
        for (const auto& v2 : two) {
          TermPtr f = tm::var("f");
          out.push_back({tm::app(tm::lam("f", t, tm::seq(tm::app(f, v1), tm::app(f, v2))), h), t->rhs});
          out.push_back({tm::app(tm::lam("f", t, tm::pair(tm::app(f, v1), tm::app(f, v2))), h),
                         ty::prod(t->rhs, t->rhs)});
        }
      break;
    }
    case TypeTag::All:
      out.push_back({tm::tapp(h, unit), open_type(t->lhs, unit)});
      out.push_back({tm::tapp(h, ty::nat()), open_type(t->lhs, ty::nat())});
      break;
    case TypeTag::Ex:
      out.push_back({tm::unpack_raw(h, "a", "x", tm::unit()), unit});
      break;
    case TypeTag::Mu:
      out.push_back({tm::unfold(h), open_type(t->lhs, t)});
      break;
    case TypeTag::RefNat:
      out.push_back({tm::deref(h), ty::nat()});
      break;
    default:
      break;
  }
  return out;
}

TermPtr registered(const std::string& src, std::map<std::string, TermPtr> defs = {}) {
  TermPtr t = parse_term(src, true);
  t = substitute_types(t, {{"bool", ty::boolean()}});
  return defs.empty() ? t : substitute(t, defs);
}

std::vector<TermPtr> counter_contexts() {
  std::vector<TermPtr> out;
  std::map<std::string, TermPtr> defs = {{"leq", corpus::mk_leq()}, {"omega", corpus::mk_omega(ty::unit())}};
  const std::string pre =
      "unpack [.] as c in let mk = fst c in let get = fst (snd c) in let inc = snd (snd c) in let r = mk () in ";
  std::vector<std::string> observe = {"get r; ()"};
  for (int j = 1; j <= 3; ++j)
    observe.push_back("match leq (get r) " + std::to_string(j) + " with inl _ => () | inr _ => omega");
  for (int m = 0; m <= 3; ++m) {
    std::string incs;
    for (int i = 0; i < m; ++i) incs += "inc r; ";
    for (const auto& obs : observe) out.push_back(registered(pre + incs + obs, defs));
  }
  // A second counter must not share state with the first.
  const std::vector<std::string> scripts = {"inc r2; inc r; inc r2; ", "inc r2; inc r2; ", "inc r; inc r; inc r2; "};
  for (const auto& s : scripts)
    for (const auto& obs : observe) out.push_back(registered(pre + "let r2 = mk () in " + s + obs, defs));
  return out;
}

// Terminates iff the list is exactly [a, b], for a, b in {1, 2}.
TermPtr list_is(uint64_t a, uint64_t b) {
  auto test = [](uint64_t n, const std::string& yes) -> std::string {
    if (n == 1) return "ifz x then " + yes + " else omega";
    return "ifz x then omega else ifz pred x then " + yes + " else omega";
  };
  std::string tail = "match unfold (snd p2) with inl _ => () | inr _ => omega";
  std::string second = "match unfold (snd p1) with inl _ => omega | inr p2 => let x = fst p2 in " + test(b, tail);
  std::string first = "match unfold [.] with inl _ => omega | inr p1 => let x = fst p1 in " + test(a, second);
  return registered(first, {{"omega", corpus::mk_omega(ty::unit())}});
}

}  // namespace

SeedPool default_seeds() {
  SeedPool p;
  TypePtr b = ty::boolean();
  p.values.push_back({corpus::mk_not(), ty::arrow(b, b)});
  p.values.push_back({corpus::mk_xor(), ty::arrow(b, ty::arrow(b, b))});
  return p;
}

std::vector<TermPtr> registered_contexts(const TypePtr& tau) {
  std::vector<TermPtr> out;
  if (type_equal(tau, parse_type("all a. a -> a"))) {
    out.push_back(registered("let f = [.] [unit] in let x = f () in f ()"));
    out.push_back(registered("let f = [.] [nat] in let x = f 1 in f 2"));
  }
  if (type_equal(tau, corpus::counter_type())) {
    for (const auto& c : counter_contexts()) out.push_back(c);
  }
  if (type_equal(tau, corpus::list_type(ty::nat()))) {
    for (uint64_t a = 1; a <= 2; ++a)
      for (uint64_t b = 1; b <= 2; ++b) out.push_back(list_is(a, b));
  }
  return out;
}

TypePtr check_context(const TermPtr& ctx, const TypePtr& tau) {
  CheckOptions opts;
  opts.free_vars[kHoleVar] = tau;
  return typecheck(plug_hole(ctx, tm::var(kHoleVar)), nullptr, opts);
}

ContextPool enumerate_contexts(const TypePtr& tau, unsigned depth, const SeedPool& seeds) {
  ContextPool pool;
  pool.hole_type = tau;
  pool.depth = depth;
  std::unordered_set<TermPtr, TermHash, TermEq> seen;
  std::vector<std::pair<TermPtr, TypePtr>> level = {{tm::hole(), tau}};
  seen.insert(tm::hole());
  pool.contexts.push_back(tm::hole());
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<std::pair<TermPtr, TypePtr>> next;
    for (const auto& [ctx, t] : level)
      for (const auto& f : frames(t, seeds)) {
        TermPtr c = plug_hole(f.frame, ctx);
        if (!seen.insert(c).second) continue;
        pool.contexts.push_back(c);
        next.push_back({c, f.result});
      }
    level = std::move(next);
  }
  pool.generated = pool.contexts.size();
  for (const auto& c : registered_contexts(tau))
    if (seen.insert(c).second) pool.contexts.push_back(c);
  return pool;
}

}  // namespace fmu
