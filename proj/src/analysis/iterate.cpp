#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "fmu/analysis.hpp"
#include "fmu/pretty.hpp"

namespace fmu {

Effort effort_from_env() {
  Effort e;
  const char* env = std::getenv("FMU_EFFORT");
  if (!env) return e;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    std::string key = item.substr(0, eq);
    unsigned long long v = 0;
    try {
      v = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      continue;
    }
    if (v == 0) continue;
    if (key == "budget") e.node_budget = v;
    else if (key == "iters") e.iters = static_cast<unsigned>(v);
    else if (key == "k") e.k = static_cast<unsigned>(v);
    else if (key == "depth") e.depth = static_cast<unsigned>(v);
    else if (key == "fuel") e.fuel = v;
    else if (key == "cuff") e.cuff_budget = v;
    else if (key == "seed") e.seed = v;
  }
  return e;
}

void Distribution::add(const Config& terminal, const Rational& p) {
  if (p == 0) return;
  Config key = value_key(terminal);
  auto [it, fresh] = entries_.emplace(key, p);
  if (!fresh) it->second += p;
}

Rational Distribution::mass() const {
  Rational m = 0;
  for (const auto& [k, p] : entries_) m += p;
  return m;
}

Rational Distribution::prob(const Config& key) const {
  auto it = entries_.find(value_key(key));
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<std::string, Rational>> Distribution::sorted() const {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& [k, p] : entries_) out.emplace_back(pretty_config(k), p);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool Distribution::operator==(const Distribution& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (const auto& [k, p] : entries_) {
    auto it = other.entries_.find(k);
    if (it == other.entries_.end() || it->second != p) return false;
  }
  return true;
}

namespace {

ChainGraph depth_graph(const Config& c, unsigned n, size_t budget, bool* truncated) {
  ExploreOptions o;
  o.node_budget = budget;
  o.max_depth = n == 0 ? 0 : n - 1;
  ChainGraph g = explore(c, o);
  if (truncated) {
    *truncated = false;
    for (size_t v = 0; v < g.size(); ++v)
      if (g.status[v] == Status::Live && !g.expanded[v] && g.depth[v] + 1 < n) *truncated = true;
  }
  return g;
}

}  // namespace

Rational phi_lower(const Config& c, unsigned n, size_t node_budget, bool* truncated) {
  if (truncated) *truncated = false;
  if (n == 0) return 0;
  ChainGraph g = depth_graph(c, n, node_budget, truncated);
  // Node at depth d needs Phi^{n-d}; iteration i computes Phi^i for depth <= n-i.
  std::vector<Rational> f(g.size()), nf(g.size());
  for (unsigned i = 1; i <= n; ++i) {
    for (size_t v = 0; v < g.size(); ++v) {
      if (g.depth[v] > n - i) continue;
      if (g.status[v] == Status::Value) {
        nf[v] = 1;
      } else if (!g.expanded[v]) {
        nf[v] = 0;
      } else {
        Rational s = 0;
        for (const Edge& e : g.out[v]) s += e.weight * f[e.to];
        nf[v] = s;
      }
    }
    std::swap(f, nf);
  }
  return f[0];
}

std::vector<Rational> phi_series(const Config& c, unsigned n, size_t node_budget, bool* truncated) {
  std::vector<Rational> series{Rational(0)};
  if (truncated) *truncated = false;
  if (n == 0) return series;
  ChainGraph g = depth_graph(c, n, node_budget, truncated);
  std::vector<Rational> f(g.size()), nf(g.size());
  for (unsigned i = 1; i <= n; ++i) {
    for (size_t v = 0; v < g.size(); ++v) {
      if (g.status[v] == Status::Value) {
        nf[v] = 1;
      } else if (!g.expanded[v]) {
        nf[v] = 0;
      } else {
        Rational s = 0;
        for (const Edge& e : g.out[v]) s += e.weight * f[e.to];
        nf[v] = s;
      }
    }
    std::swap(f, nf);
    series.push_back(f[0]);
  }
  return series;
}

Distribution xi_distribution(const Config& c, unsigned n, size_t node_budget, bool* truncated) {
  Distribution d;
  if (truncated) *truncated = false;
  if (n == 0) return d;
  ChainGraph g = depth_graph(c, n, node_budget, truncated);
  std::map<uint32_t, Rational> cur{{0u, Rational(1)}};
  // Paths of length t <= n-1 ending in a value contribute their weight.
  for (unsigned t = 0; t < n && !cur.empty(); ++t) {
    std::map<uint32_t, Rational> next;
    for (const auto& [v, m] : cur) {
      if (g.status[v] == Status::Value) {
        d.add(g.nodes[v], m);
      } else if (g.expanded[v] && t + 1 < n) {
        for (const Edge& e : g.out[v]) next[e.to] += m * e.weight;
      }
    }
    cur = std::move(next);
  }
  return d;
}

Rational Path::weight() const {
  Rational w = 1;
  for (const auto& s : steps) w *= s.weight;
  return w;
}

}  // namespace fmu
