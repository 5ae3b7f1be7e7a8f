#include <deque>

#include "fmu/analysis.hpp"

namespace fmu {
namespace {

struct Expansion {
  std::vector<WeightedStep> steps;
  std::vector<Status> target_status;
};

Expansion expand(const Config& c) {
  Expansion e;
  e.steps = step_successors(c);
  e.target_status.reserve(e.steps.size());
  for (const auto& s : e.steps) e.target_status.push_back(status(s.target));
  return e;
}

uint32_t add_node(ChainGraph& g, const Config& c, Status st, uint32_t depth) {
  uint32_t id = static_cast<uint32_t>(g.nodes.size());
  g.nodes.push_back(c);
  g.status.push_back(st);
  g.depth.push_back(depth);
  g.expanded.push_back(0);
  g.out.emplace_back();
  g.index.emplace(c, id);
  return id;
}

// Number of distinct targets not yet in the graph.
size_t count_new(const ChainGraph& g, const Expansion& e) {
  std::vector<const Config*> fresh;
  for (const auto& s : e.steps) {
    if (g.index.count(s.target)) continue;
    bool dup = false;
    for (const Config* f : fresh) dup = dup || config_equal(*f, s.target);
    if (!dup) fresh.push_back(&s.target);
  }
  return fresh.size();
}

// Adds edges (merged per target and kind) and new nodes; returns new ids.
void attach(ChainGraph& g, uint32_t u, const Expansion& e, std::vector<uint32_t>& fresh_ids) {
  g.expanded[u] = 1;
  for (size_t i = 0; i < e.steps.size(); ++i) {
    const WeightedStep& s = e.steps[i];
    uint32_t v = g.find(s.target);
    if (v == UINT32_MAX) {
      v = add_node(g, s.target, e.target_status[i], g.depth[u] + 1);
      fresh_ids.push_back(v);
    }
    bool merged = false;
    for (Edge& ed : g.out[u]) {
      if (ed.to == v && ed.kind == s.kind) {
        ed.weight += s.weight;
        merged = true;
        break;
      }
    }
    if (!merged) g.out[u].push_back(Edge{v, s.weight, s.kind});
  }
}

void finalize(ChainGraph& g) {
  g.complete = true;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    if (g.status[i] == Status::Live && !g.expanded[i]) g.complete = false;
}

}  // namespace

uint32_t ChainGraph::find(const Config& c) const {
  auto it = index.find(c);
  return it == index.end() ? UINT32_MAX : it->second;
}

ChainGraph explore(const Config& root, const ExploreOptions& opts) {
  ChainGraph g;
  add_node(g, root, status(root), 0);
  std::vector<uint32_t> level{0};
  uint32_t depth = 0;
  bool stop = false;
  while (!level.empty() && !stop && depth < opts.max_depth) {
    std::vector<uint32_t> live;
    for (uint32_t u : level)
      if (g.status[u] == Status::Live) live.push_back(u);
    std::vector<Expansion> ex(live.size());
    const long n = static_cast<long>(live.size());
#pragma omp parallel for schedule(dynamic, 4) if (opts.parallel && n > 8)
    for (long i = 0; i < n; ++i) ex[i] = expand(g.nodes[live[i]]);
    std::vector<uint32_t> next;
    for (size_t i = 0; i < live.size(); ++i) {
      if (g.nodes.size() + count_new(g, ex[i]) > opts.node_budget) {
        stop = true;
        break;
      }
      attach(g, live[i], ex[i], next);
    }
    level = std::move(next);
    ++depth;
  }
  finalize(g);
  return g;
}

ChainGraph build_chain(const Config& root, size_t node_budget) {
  ExploreOptions o;
  o.node_budget = node_budget;
  return explore(root, o);
}

ChainGraph build_chain_serial(const Config& root, size_t node_budget, uint32_t max_depth) {
  ChainGraph g;
  add_node(g, root, status(root), 0);
  std::deque<uint32_t> queue{0};
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    if (g.status[u] != Status::Live || g.depth[u] >= max_depth) continue;
    Expansion e = expand(g.nodes[u]);
    if (g.nodes.size() + count_new(g, e) > node_budget) break;
    std::vector<uint32_t> fresh;
    attach(g, u, e, fresh);
    for (uint32_t v : fresh) queue.push_back(v);
  }
  finalize(g);
  return g;
}

}  // namespace fmu
