#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmu/rational.hpp"
#include "fmu/term.hpp"

namespace fmu {

using Heap = std::vector<uint64_t>;  // location index -> numeral

// A closed term with its heap, in canonical form: locations are numbered by
// first occurrence in the term, unreachable ones follow sorted by content.
struct Config {
  Heap heap;
  TermPtr term;
  size_t hash = 0;
};

Config make_config(const TermPtr& term, Heap heap = {});
bool config_equal(const Config& a, const Config& b);
struct ConfigHash {
  size_t operator()(const Config& c) const { return c.hash; }
};
struct ConfigEq {
  bool operator()(const Config& a, const Config& b) const { return config_equal(a, b); }
};
std::string pretty_config(const Config& c);

// The value part of a terminal config together with the heap cells it can
// reach, renumbered and without annotations; used as a distribution key.
Config value_key(const Config& c);

enum class StepKind { Choice, UnfoldFold, Other };
enum class Status { Value, Stuck, Live };

struct WeightedStep {
  Rational weight;
  Config target;
  StepKind kind;
};

Status status(const Config& c);
const char* kind_name(StepKind k);

// All one-step successors in a fixed order; empty iff value or stuck.
std::vector<WeightedStep> step_successors(const Config& c);
// Same relation computed through decompose/plug, kept as a cross-check.
std::vector<WeightedStep> step_via_decompose(const Config& c);

enum class CuffOutcome { Value, Stuck, AtChoiceOrUnfold, BudgetExceeded };
struct CuffResult {
  CuffOutcome outcome;
  Config config;  // where normalization stopped
  size_t steps = 0;
};
CuffResult cuff_normalize(const Config& c, size_t budget);

enum class RunOutcome { Terminated, StuckAt, FuelExhausted };
struct RunResult {
  RunOutcome outcome;
  Config config;
  size_t steps = 0;
};
RunResult sample_run(const Config& c, uint64_t seed, size_t fuel);

}  // namespace fmu
