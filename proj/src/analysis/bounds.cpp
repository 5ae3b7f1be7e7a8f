#include "fmu/analysis.hpp"
#include "solve.hpp"

namespace fmu {

Bounds prob_bounds(const Config& c, const Effort& effort) {
  ChainGraph g = build_chain(c, effort.node_budget);
  Bounds b;
  b.nodes = g.size();
  if (g.complete) {
    b.lower = b.upper = (*solve_exact(g))[0];
    b.exact = true;
    return b;
  }
  std::vector<int> lower(g.size()), upper(g.size());
  for (size_t v = 0; v < g.size(); ++v) {
    switch (g.status[v]) {
      case Status::Value:
        lower[v] = upper[v] = 0;
        break;
      case Status::Stuck:
        lower[v] = upper[v] = kZero;
        break;
      case Status::Live:
        lower[v] = g.expanded[v] ? kTransient : kZero;
        upper[v] = g.expanded[v] ? kTransient : 0;
        break;
    }
  }
  b.lower = solve_absorbing(g, lower, 1)[0][0];
  b.upper = solve_absorbing(g, upper, 1)[0][0];
  return b;
}

std::optional<Distribution> distribution_of(const Config& c, size_t node_budget) {
  return exact_distribution(build_chain(c, node_budget));
}

}  // namespace fmu
