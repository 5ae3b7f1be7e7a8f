#pragma once

// Test-side oracles and generators. Nothing here calls the library's solver.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "fmu/analysis.hpp"
#include "fmu/corpus.hpp"
#include "fmu/parser.hpp"

namespace support {

using namespace fmu;

inline TermPtr omega() { return corpus::mk_omega(ty::unit()); }

// Parses with `omega` (at unit) and the corpus helpers available by name.
inline TermPtr term(const std::string& src) {
  return corpus::build(src, {{"omega", omega()},
                             {"true", tm::tt()},
                             {"false", tm::ff()},
                             {"leq", corpus::mk_leq()},
                             {"div2", corpus::mk_div2()}});
}

inline Config cfg(const std::string& src) { return make_config(term(src)); }

// Termination probability per node by plain dense Gauss-Jordan elimination
// on x = A x + b restricted to nodes that can reach a value.
inline std::vector<Rational> dense_solve(const ChainGraph& g) {
  const size_t n = g.size();
  std::vector<std::vector<uint32_t>> preds(n);
  for (uint32_t v = 0; v < n; ++v)
    for (const auto& e : g.out[v]) preds[e.to].push_back(v);
  std::vector<char> good(n, 0);
  std::vector<uint32_t> stack;
  for (uint32_t v = 0; v < n; ++v)
    if (g.status[v] == Status::Value) {
      good[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (uint32_t u : preds[v])
      if (!good[u]) {
        good[u] = 1;
        stack.push_back(u);
      }
  }
  std::vector<uint32_t> idx(n, UINT32_MAX);
  std::vector<uint32_t> vars;
  for (uint32_t v = 0; v < n; ++v)
    if (good[v] && g.status[v] == Status::Live) {
      idx[v] = static_cast<uint32_t>(vars.size());
      vars.push_back(v);
    }
  const size_t m = vars.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (size_t i = 0; i < m; ++i) {
    a[i][i] = 1;
    for (const auto& e : g.out[vars[i]]) {
      if (g.status[e.to] == Status::Value)
        a[i][m] += e.weight;
      else if (idx[e.to] != UINT32_MAX)
        a[i][idx[e.to]] -= e.weight;
    }
  }
  for (size_t c = 0; c < m; ++c) {
    size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (size_t j = c; j <= m; ++j) a[c][j] *= inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (uint32_t v = 0; v < n; ++v)
    if (g.status[v] == Status::Value) x[v] = 1;
  for (size_t i = 0; i < m; ++i) x[vars[i]] = a[i][m];
  return x;
}

// Explicit enumeration of all paths of at most `len` steps ending in a
// value; returns the summed weight per printed value.
inline void enumerate_paths(const Config& c, unsigned len, const Rational& w, std::map<std::string, Rational>& out) {
  if (status(c) == Status::Value) {
    out[pretty_config(value_key(c))] += w;
    return;
  }
  if (len == 0) return;
  for (const auto& s : step_successors(c)) enumerate_paths(s.target, len - 1, w * s.weight, out);
}

// Random closed well-typed terms over unit, nat and bool with choices,
// abstractions and let. Everything generated terminates.
class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  TermPtr at(const TypePtr& t, int depth) { return go(t, depth, {}); }

  TypePtr pick_type() {
    switch (pick(3)) {
      case 0:
        return ty::unit();
      case 1:
        return ty::nat();
      default:
        return ty::boolean();
    }
  }

 private:
  struct Var {
    std::string name;
    TypePtr type;
  };

  int pick(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }

  TermPtr leaf(const TypePtr& t, const std::vector<Var>& env) {
    std::vector<TermPtr> vs;
    for (const auto& v : env)
      if (type_equal(v.type, t)) vs.push_back(tm::var(v.name));
    if (!vs.empty() && pick(2) == 0) return vs[static_cast<size_t>(pick(static_cast<int>(vs.size())))];
    if (t->tag == TypeTag::Unit) return tm::unit();
    if (t->tag == TypeTag::Nat) return tm::num(static_cast<uint64_t>(1 + pick(3)));
    return pick(2) ? tm::tt() : tm::ff();
  }

  TermPtr go(const TypePtr& t, int depth, std::vector<Var> env) {
    if (depth <= 0) return leaf(t, env);
    const std::string x = "v" + std::to_string(env.size());
    switch (pick(7)) {
      case 0:
        return leaf(t, env);
      case 1:
        return tm::choice(go(t, depth - 1, env), go(t, depth - 1, env));
      case 2: {
        TypePtr s = pick_type();
        TermPtr bound = go(s, depth - 1, env);
        env.push_back({x, s});
        return tm::let(x, bound, go(t, depth - 1, env));
      }
      case 3: {
        TypePtr s = pick_type();
        TermPtr arg = go(s, depth - 1, env);
        auto inner = env;
        inner.push_back({x, s});
        return tm::app(tm::lam(x, s, go(t, depth - 1, inner)), arg);
      }
      case 4:
        return tm::ifz(go(ty::nat(), depth - 1, env), go(t, depth - 1, env), go(t, depth - 1, env));
      case 5:
        if (t->tag == TypeTag::Nat) return pick(2) ? tm::succ(go(t, depth - 1, env)) : tm::rand(go(t, depth - 1, env));
        if (t->tag == TypeTag::Sum)
          return tm::match(go(t, depth - 1, env), "_", go(t, depth - 1, env), "_", go(t, depth - 1, env));
        return tm::seq(go(pick_type(), depth - 1, env), go(t, depth - 1, env));
      default: {
        TypePtr s = pick_type();
        return tm::proj(1, tm::pair(go(t, depth - 1, env), go(s, depth - 1, env)));
      }
    }
  }

  std::mt19937_64 rng_;
};

// Random program that may diverge: a generated term with Omega mixed in.
inline TermPtr maybe_diverging(Gen& g, uint64_t seed) {
  TermPtr base = g.at(ty::nat(), 3);
  switch (seed % 3) {
    case 0:
      return base;
    case 1:
      return tm::choice(base, corpus::mk_omega(ty::nat()));
    default:
      return tm::seq(tm::ifz(tm::rand(tm::num(3)), tm::unit(), omega()), base);
  }
}

}  // namespace support
