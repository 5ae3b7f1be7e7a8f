#include "solve.hpp"

#include <map>
#include <queue>
#include <set>

namespace fmu {
namespace {

using Row = std::map<uint32_t, Rational>;

// Sparse elimination of x = A x + B over the variable set, where each
// variable's row has no diagonal entry initially.
class Eliminator {
 public:
  Eliminator(std::vector<Row> coef, std::vector<Row> rhs) : coef_(std::move(coef)), rhs_(std::move(rhs)) {
    size_t n = coef_.size();
    preds_.resize(n);
    for (uint32_t v = 0; v < n; ++v)
      for (const auto& [w, c] : coef_[v]) preds_[w].insert(v);
  }

  std::vector<Row> solve() {
    size_t n = coef_.size();
    std::vector<char> done(n, 0);
    std::vector<uint32_t> order;
    using Item = std::pair<size_t, uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    auto degree = [&](uint32_t v) { return preds_[v].size() * (coef_[v].size() + 1); };
    for (uint32_t v = 0; v < n; ++v) pq.emplace(degree(v), v);
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      if (d != degree(v)) {
        pq.emplace(degree(v), v);
        continue;
      }
      eliminate(v);
      done[v] = 1;
      order.push_back(v);
      for (uint32_t u : touched_) pq.emplace(degree(u), u);
    }
    // Back substitution: each recorded row refers only to later variables.
    std::vector<Row> x(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      uint32_t v = *it;
      Row val = rhs_[v];
      for (const auto& [w, c] : coef_[v])
        for (const auto& [cls, p] : x[w]) val[cls] += c * p;
      x[v] = std::move(val);
    }
    return x;
  }

 private:
  std::vector<Row> coef_, rhs_;
  std::vector<std::set<uint32_t>> preds_;
  std::vector<uint32_t> touched_;

  void eliminate(uint32_t v) {
    touched_.clear();
    Row& row = coef_[v];
    auto self = row.find(v);
    if (self != row.end()) {
      Rational scale = 1 / (1 - self->second);
      row.erase(self);
      preds_[v].erase(v);
      for (auto& [w, c] : row) c *= scale;
      for (auto& [cls, p] : rhs_[v]) p *= scale;
    }
    for (const auto& [w, c] : row) preds_[w].erase(v);
    std::vector<uint32_t> preds(preds_[v].begin(), preds_[v].end());
    for (uint32_t u : preds) {
      if (u == v) continue;
      Row& ru = coef_[u];
      auto it = ru.find(v);
      if (it == ru.end()) continue;
      Rational a = it->second;
      ru.erase(it);
      for (const auto& [w, c] : row) {
        ru[w] += a * c;
        preds_[w].insert(u);
      }
      for (const auto& [cls, p] : rhs_[v]) rhs_[u][cls] += a * p;
      touched_.push_back(u);
    }
    for (const auto& [w, c] : row) touched_.push_back(w);
    preds_[v].clear();
  }
};

}  // namespace

std::vector<std::vector<Rational>> solve_absorbing(const ChainGraph& g, const std::vector<int>& cls, size_t k) {
  const size_t n = g.size();
  std::vector<std::vector<Rational>> result(n, std::vector<Rational>(k));

  // Transient nodes that cannot reach an absorbing class are zero.
  std::vector<std::vector<uint32_t>> rev(n);
  for (uint32_t u = 0; u < n; ++u)
    if (cls[u] == kTransient)
      for (const Edge& e : g.out[u]) rev[e.to].push_back(u);
  std::vector<char> reach(n, 0);
  std::vector<uint32_t> stack;
  for (uint32_t v = 0; v < n; ++v)
    if (cls[v] >= 0) {
      reach[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (uint32_t u : rev[v])
      if (!reach[u]) {
        reach[u] = 1;
        stack.push_back(u);
      }
  }

  // Follow deterministic weight-1 chains to a representative.
  const uint32_t unset = UINT32_MAX;
  std::vector<uint32_t> rep(n, unset);
  auto single_target = [&](uint32_t u) -> uint32_t {
    if (cls[u] != kTransient || !reach[u]) return unset;
    const auto& es = g.out[u];
    uint32_t t = es.empty() ? unset : es[0].to;
    for (const Edge& e : es)
      if (e.to != t) return unset;
    return t;
  };
  for (uint32_t v = 0; v < n; ++v) {
    if (rep[v] != unset) continue;
    std::vector<uint32_t> chain;
    uint32_t cur = v;
    std::set<uint32_t> seen;
    while (rep[cur] == unset) {
      uint32_t t = single_target(cur);
      if (t == unset || !seen.insert(cur).second) {
        rep[cur] = cur;
        break;
      }
      chain.push_back(cur);
      cur = t;
    }
    for (uint32_t c : chain) rep[c] = rep[cur];
  }

  // Variables: reachable transient representatives.
  std::vector<uint32_t> var_of(n, unset);
  std::vector<uint32_t> vars;
  for (uint32_t v = 0; v < n; ++v)
    if (rep[v] == v && cls[v] == kTransient && reach[v]) {
      var_of[v] = static_cast<uint32_t>(vars.size());
      vars.push_back(v);
    }
  std::vector<Row> coef(vars.size()), rhs(vars.size());
  for (uint32_t i = 0; i < vars.size(); ++i) {
    for (const Edge& e : g.out[vars[i]]) {
      uint32_t r = rep[e.to];
      if (cls[r] >= 0)
        rhs[i][static_cast<uint32_t>(cls[r])] += e.weight;
      else if (var_of[r] != unset)
        coef[i][var_of[r]] += e.weight;
    }
  }
  std::vector<Row> x = Eliminator(std::move(coef), std::move(rhs)).solve();

  for (uint32_t v = 0; v < n; ++v) {
    uint32_t r = rep[v];
    if (cls[r] >= 0) {
      result[v][static_cast<size_t>(cls[r])] = 1;
    } else if (var_of[r] != unset) {
      for (const auto& [c, p] : x[var_of[r]]) result[v][c] = p;
    }
  }
  return result;
}

std::optional<std::vector<Rational>> solve_exact(const ChainGraph& g) {
  if (!g.complete) return std::nullopt;
  std::vector<int> cls(g.size());
  for (size_t v = 0; v < g.size(); ++v)
    cls[v] = g.status[v] == Status::Value ? 0 : g.status[v] == Status::Stuck ? kZero : kTransient;
  auto sol = solve_absorbing(g, cls, 1);
  std::vector<Rational> out(g.size());
  for (size_t v = 0; v < g.size(); ++v) out[v] = sol[v][0];
  return out;
}

std::optional<Distribution> exact_distribution(const ChainGraph& g) {
  if (!g.complete) return std::nullopt;
  std::vector<int> cls(g.size(), kTransient);
  std::vector<uint32_t> representative;
  std::unordered_map<Config, int, ConfigHash, ConfigEq> class_of;
  for (uint32_t v = 0; v < g.size(); ++v) {
    if (g.status[v] == Status::Stuck) cls[v] = kZero;
    if (g.status[v] != Status::Value) continue;
    auto [it, fresh] = class_of.emplace(value_key(g.nodes[v]), static_cast<int>(representative.size()));
    if (fresh) representative.push_back(v);
    cls[v] = it->second;
  }
  auto sol = solve_absorbing(g, cls, representative.size());
  Distribution d;
  for (size_t c = 0; c < representative.size(); ++c) d.add(g.nodes[representative[c]], sol[0][c]);
  return d;
}

}  // namespace fmu
