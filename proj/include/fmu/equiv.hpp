#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fmu/analysis.hpp"
#include "fmu/term.hpp"
#include "fmu/type.hpp"

namespace fmu {

// Closed values offered to contexts as arguments, matched by type.
struct SeedPool {
  std::vector<std::pair<TermPtr, TypePtr>> values;
  size_t per_type = 3;  // cap on seeds drawn for one type
};

// (), 1, 2, 3, true, false, not and xor.
SeedPool default_seeds();

struct ContextPool {
  TypePtr hole_type;
  unsigned depth = 0;
  std::vector<TermPtr> contexts;  // generated first, then registered ones
  size_t generated = 0;
};

ContextPool enumerate_contexts(const TypePtr& tau, unsigned depth, const SeedPool& seeds = default_seeds());

// Hand-written contexts for hole types that generic frames observe poorly:
// the double-call context at all a. a -> a, the counter interface and list
// shape tests.
std::vector<TermPtr> registered_contexts(const TypePtr& tau);

// Result type of ctx with its hole typed tau; throws TypeError.
TypePtr check_context(const TermPtr& ctx, const TypePtr& tau);

enum class VerdictKind { Holds, Distinguished, Inconclusive };
const char* verdict_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Holds;
  unsigned depth = 0;
  size_t node_budget = 0;
  size_t contexts_checked = 0;
  TermPtr context;  // witness for Distinguished / Inconclusive
  Bounds lhs, rhs;  // bounds of E[e1] and E[e2] on the witness
  // distribution_equiv only: first differing value and its probabilities.
  std::string value;
  Rational lhs_prob, rhs_prob;
};

struct CiuOptions {
  Effort effort;
  SeedPool seeds = default_seeds();
  std::vector<TermPtr> extra_contexts;
  bool parallel = true;
};

// e1 below e2 on every context of the pool: lower(E[e1]) > upper(E[e2])
// refutes, upper(E[e1]) <= lower(E[e2]) confirms, anything else is
// inconclusive. The first refuting context in pool order wins.
Verdict ciu_approx(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau, const CiuOptions& opts = {});
// Both directions from one evaluation of the pool.
std::pair<Verdict, Verdict> ciu_equiv(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau,
                                      const CiuOptions& opts = {});

// Exact output distributions compared per context.
Verdict distribution_equiv(const TermPtr& e1, const TermPtr& e2, const TypePtr& tau,
                           const std::vector<TermPtr>& contexts, size_t node_budget = 20000);

}  // namespace fmu
