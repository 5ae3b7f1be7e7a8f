#include <deque>

#include "fmu/analysis.hpp"
#include "fmu/pretty.hpp"

namespace fmu {
namespace {

struct RedNode {
  CuffOutcome outcome;
  uint32_t depth;
  bool expanded = false;
  std::vector<std::pair<uint32_t, Rational>> red;
};

struct RedGraph {
  std::vector<RedNode> nodes;
  bool truncated = false;
};

CuffResult normalize_or_throw(const Config& c, size_t cuff_budget) {
  CuffResult r = cuff_normalize(c, cuff_budget);
  if (r.outcome == CuffOutcome::BudgetExceeded)
    throw CuffBudgetError("cuff path longer than " + std::to_string(cuff_budget) + " steps from " +
                          pretty_config(c).substr(0, 120));
  return r;
}

// Nodes are Red targets reachable within `k - 1` Red steps.
RedGraph build_red_graph(const Config& root, unsigned k, size_t node_budget, size_t cuff_budget) {
  RedGraph g;
  std::unordered_map<Config, uint32_t, ConfigHash, ConfigEq> index;
  std::vector<Config> normal;
  auto add = [&](const Config& c, uint32_t depth) {
    CuffResult r = normalize_or_throw(c, cuff_budget);
    uint32_t id = static_cast<uint32_t>(g.nodes.size());
    g.nodes.push_back(RedNode{r.outcome, depth, false, {}});
    normal.push_back(r.config);
    index.emplace(c, id);
    return id;
  };
  add(root, 0);
  std::deque<uint32_t> queue{0};
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    if (g.nodes[u].outcome != CuffOutcome::AtChoiceOrUnfold || g.nodes[u].depth + 1 >= k) continue;
    std::vector<WeightedStep> steps = step_successors(normal[u]);
    size_t fresh = 0;
    for (const auto& s : steps) fresh += index.count(s.target) ? 0 : 1;
    if (g.nodes.size() + fresh > node_budget) {
      g.truncated = true;
      break;
    }
    std::vector<std::pair<uint32_t, Rational>> red;
    for (const auto& s : steps) {
      auto it = index.find(s.target);
      uint32_t v;
      if (it == index.end()) {
        v = add(s.target, g.nodes[u].depth + 1);
        queue.push_back(v);
      } else {
        v = it->second;
      }
      bool merged = false;
      for (auto& [to, w] : red)
        if (to == v) {
          w += s.weight;
          merged = true;
        }
      if (!merged) red.emplace_back(v, s.weight);
    }
    g.nodes[u].red = std::move(red);
    g.nodes[u].expanded = true;
  }
  return g;
}

Rational psi_value(const RedNode& n, const std::vector<Rational>& prev) {
  switch (n.outcome) {
    case CuffOutcome::Value:
      return 1;
    case CuffOutcome::AtChoiceOrUnfold: {
      Rational s = 0;
      if (n.expanded)
        for (const auto& [to, w] : n.red) s += w * prev[to];
      return s;
    }
    default:
      return 0;
  }
}

}  // namespace

std::vector<Path> red_set(const Config& c, size_t cuff_budget) {
  std::vector<WeightedStep> prefix;
  Config cur = c;
  for (;;) {
    if (cur.term->value) return {};
    std::vector<WeightedStep> succ = step_successors(cur);
    if (succ.empty()) return {};
    if (succ.front().kind != StepKind::Other) {
      std::vector<Path> out;
      for (auto& s : succ) {
        Path p{c, prefix};
        p.steps.push_back(s);
        out.push_back(std::move(p));
      }
      return out;
    }
    if (prefix.size() >= cuff_budget)
      throw CuffBudgetError("cuff path longer than " + std::to_string(cuff_budget) + " steps");
    prefix.push_back(succ.front());
    cur = succ.front().target;
  }
}

Rational psi_stratified(const Config& c, unsigned k, size_t node_budget, size_t cuff_budget, bool* truncated) {
  if (truncated) *truncated = false;
  if (k == 0) return 0;
  RedGraph g = build_red_graph(c, k, node_budget, cuff_budget);
  if (truncated) *truncated = g.truncated;
  std::vector<Rational> f(g.nodes.size()), nf(g.nodes.size());
  for (unsigned i = 1; i <= k; ++i) {
    for (size_t v = 0; v < g.nodes.size(); ++v)
      if (g.nodes[v].depth <= k - i) nf[v] = psi_value(g.nodes[v], f);
    std::swap(f, nf);
  }
  return f[0];
}

std::vector<Rational> psi_series(const Config& c, unsigned k, size_t node_budget, size_t cuff_budget,
                                 bool* truncated) {
  std::vector<Rational> series{Rational(0)};
  if (truncated) *truncated = false;
  if (k == 0) return series;
  RedGraph g = build_red_graph(c, k, node_budget, cuff_budget);
  if (truncated) *truncated = g.truncated;
  std::vector<Rational> f(g.nodes.size()), nf(g.nodes.size());
  for (unsigned i = 1; i <= k; ++i) {
    for (size_t v = 0; v < g.nodes.size(); ++v) nf[v] = psi_value(g.nodes[v], f);
    std::swap(f, nf);
    series.push_back(f[0]);
  }
  return series;
}

}  // namespace fmu
