#include <algorithm>

#include "fmu/equiv.hpp"
#include "fmu/typecheck.hpp"

namespace fmu {

namespace {

struct PoolResult {
  std::vector<TermPtr> contexts;
  std::vector<Bounds> lhs, rhs;
  unsigned depth;
};

PoolResult evaluate(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau, const CiuOptions& opts) {
  typecheck(e1, tau);
  typecheck(e2, tau);
  ContextPool pool = enumerate_contexts(tau, opts.effort.depth, opts.seeds);
  for (const auto& c : opts.extra_contexts) pool.contexts.push_back(c);
  PoolResult r;
  r.depth = opts.effort.depth;
  r.contexts = pool.contexts;
  const long n = static_cast<long>(r.contexts.size());
  r.lhs.resize(static_cast<size_t>(n));
  r.rhs.resize(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
  for (long i = 0; i < n; ++i) {
    const TermPtr& ctx = r.contexts[static_cast<size_t>(i)];
    r.lhs[static_cast<size_t>(i)] = prob_bounds(make_config(plug_hole(ctx, e1)), opts.effort);
    r.rhs[static_cast<size_t>(i)] = prob_bounds(make_config(plug_hole(ctx, e2)), opts.effort);
  }
  return r;
}

Verdict judge(const PoolResult& r, bool swap, const Effort& effort) {
  Verdict v;
  v.depth = r.depth;
  v.node_budget = effort.node_budget;
  v.contexts_checked = r.contexts.size();
  const auto& lo = swap ? r.rhs : r.lhs;
  const auto& hi = swap ? r.lhs : r.rhs;
  long undecided = -1;
  for (size_t i = 0; i < r.contexts.size(); ++i) {
    if (lo[i].lower > hi[i].upper) {
      v.kind = VerdictKind::Distinguished;
      v.context = r.contexts[i];
      v.lhs = lo[i];
      v.rhs = hi[i];
      return v;
    }
    if (undecided < 0 && lo[i].upper > hi[i].lower) undecided = static_cast<long>(i);
  }
  if (undecided >= 0) {
    size_t i = static_cast<size_t>(undecided);
    v.kind = VerdictKind::Inconclusive;
    v.context = r.contexts[i];
    v.lhs = lo[i];
    v.rhs = hi[i];
  }
  return v;
}

}  // namespace

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Holds:
      return "holds";
    case VerdictKind::Distinguished:
      return "distinguished";
    case VerdictKind::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict ciu_approx(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau, const CiuOptions& opts) {
  return judge(evaluate(e1, e2, tau, opts), false, opts.effort);
}

std::pair<Verdict, Verdict> ciu_equiv(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau,
                                      const CiuOptions& opts) {
  PoolResult r = evaluate(e1, e2, tau, opts);
  return {judge(r, false, opts.effort), judge(r, true, opts.effort)};
}

Verdict distribution_equiv(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau,
                           const std::vector<TermPtr>& contexts, size_t node_budget) {
  typecheck(e1, tau);
  typecheck(e2, tau);
  Verdict v;
  v.node_budget = node_budget;
  v.contexts_checked = contexts.size();
  for (const auto& ctx : contexts) {
    auto d1 = distribution_of(make_config(plug_hole(ctx, e1)), node_budget);
    auto d2 = distribution_of(make_config(plug_hole(ctx, e2)), node_budget);
    if (!d1 || !d2) {
      v.kind = VerdictKind::Inconclusive;
      v.context = ctx;
      return v;
    }
    if (*d1 == *d2) continue;
    // First differing value in printed order.
    auto s1 = d1->sorted(), s2 = d2->sorted();
    std::map<std::string, std::pair<Rational, Rational>> both;
    for (const auto& [k, p] : s1) both[k].first = p;
    for (const auto& [k, p] : s2) both[k].second = p;
    for (const auto& [k, pq] : both) {
      if (pq.first == pq.second) continue;
      v.kind = VerdictKind::Distinguished;
      v.context = ctx;
      v.value = k;
      v.lhs_prob = pq.first;
      v.rhs_prob = pq.second;
      return v;
    }
  }
  return v;
}

}  // namespace fmu
