#include <random>

#include "fmu/semantics.hpp"

namespace fmu {

RunResult sample_run(const Config& c, uint64_t seed, size_t fuel) {
  std::mt19937_64 rng(seed);
  Config cur = c;
  for (size_t steps = 0;; ++steps) {
    if (cur.term->value) return {RunOutcome::Terminated, cur, steps};
    if (steps >= fuel) return {RunOutcome::FuelExhausted, cur, steps};
    std::vector<WeightedStep> succ = step_successors(cur);
    if (succ.empty()) return {RunOutcome::StuckAt, cur, steps};
    size_t pick = 0;
    if (succ.size() > 1) pick = std::uniform_int_distribution<size_t>(0, succ.size() - 1)(rng);
    cur = std::move(succ[pick].target);
  }
}

}  // namespace fmu
