#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fmu/rational.hpp"
#include "fmu/semantics.hpp"

namespace fmu {

struct Effort {
  size_t node_budget = 20000;
  size_t cuff_budget = 200;
  unsigned iters = 30;
  unsigned k = 30;
  unsigned depth = 2;
  size_t fuel = 10000;
  uint64_t seed = 1;
};

// Reads FMU_EFFORT ("budget=N,iters=N,k=N,depth=N,fuel=N,cuff=N,seed=N")
// on top of the defaults.
Effort effort_from_env();

struct CuffBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sub-probability distribution over terminal configs, keyed by value_key.
class Distribution {
 public:
  void add(const Config& terminal, const Rational& p);
  Rational mass() const;
  Rational prob(const Config& key) const;
  size_t size() const { return entries_.size(); }
  // (pretty-printed key, probability), sorted by the printed key.
  std::vector<std::pair<std::string, Rational>> sorted() const;
  bool operator==(const Distribution& other) const;
  const std::unordered_map<Config, Rational, ConfigHash, ConfigEq>& entries() const { return entries_; }

 private:
  std::unordered_map<Config, Rational, ConfigHash, ConfigEq> entries_;
};

// ----- reachable configuration graph -----

struct Edge {
  uint32_t to;
  Rational weight;
  StepKind kind;
};

struct ChainGraph {
  std::vector<Config> nodes;
  std::vector<Status> status;
  std::vector<uint32_t> depth;  // BFS distance from the root
  std::vector<char> expanded;
  std::vector<std::vector<Edge>> out;
  bool complete = false;
  std::unordered_map<Config, uint32_t, ConfigHash, ConfigEq> index;

  size_t size() const { return nodes.size(); }
  // UINT32_MAX when absent.
  uint32_t find(const Config& c) const;
};

struct ExploreOptions {
  size_t node_budget = 20000;
  uint32_t max_depth = std::numeric_limits<uint32_t>::max();
  bool parallel = true;
};

// Level-synchronous breadth-first exploration. Successors of a level are
// computed concurrently and merged in order, so the numbering equals the
// serial queue order.
ChainGraph explore(const Config& root, const ExploreOptions& opts);
ChainGraph build_chain(const Config& root, size_t node_budget = 20000);
// Plain FIFO exploration, the reference for the parallel version.
ChainGraph build_chain_serial(const Config& root, size_t node_budget = 20000,
                              uint32_t max_depth = std::numeric_limits<uint32_t>::max());

// ----- iterations -----

// Phi^n(bottom)(c). `truncated` reports a node budget cut, in which case the
// result is only a lower bound of Phi^n.
Rational phi_lower(const Config& c, unsigned n, size_t node_budget = 20000, bool* truncated = nullptr);
// Phi^0..Phi^n at c, by forward iteration over one explored graph.
std::vector<Rational> phi_series(const Config& c, unsigned n, size_t node_budget = 20000,
                                 bool* truncated = nullptr);
// Xi^n(bottom)(c) by forward propagation of path weights.
Distribution xi_distribution(const Config& c, unsigned n, size_t node_budget = 20000, bool* truncated = nullptr);

struct Path {
  Config start;
  std::vector<WeightedStep> steps;
  Rational weight() const;
  const Config& last() const { return steps.empty() ? start : steps.back().target; }
};

// Red(c): cuff prefix followed by exactly one choice or unfold-fold step.
std::vector<Path> red_set(const Config& c, size_t cuff_budget = 200);

// Psi^k(bottom)(c). Throws CuffBudgetError.
Rational psi_stratified(const Config& c, unsigned k, size_t node_budget = 20000, size_t cuff_budget = 200,
                        bool* truncated = nullptr);
std::vector<Rational> psi_series(const Config& c, unsigned k, size_t node_budget = 20000,
                                 size_t cuff_budget = 200, bool* truncated = nullptr);

// ----- exact solving on finite chains -----

// Per-node termination probability; nullopt when the graph is incomplete.
std::optional<std::vector<Rational>> solve_exact(const ChainGraph& g);
// Absorption distribution from the root; nullopt when incomplete.
std::optional<Distribution> exact_distribution(const ChainGraph& g);

struct Bounds {
  Rational lower, upper;
  bool exact = false;
  size_t nodes = 0;
};
// Exact when the chain is complete. Otherwise unexplored configs count as
// diverging (lower) or terminating (upper).
Bounds prob_bounds(const Config& c, const Effort& effort = {});
// Distribution of c if its chain is complete within the budget.
std::optional<Distribution> distribution_of(const Config& c, size_t node_budget = 20000);

}  // namespace fmu
