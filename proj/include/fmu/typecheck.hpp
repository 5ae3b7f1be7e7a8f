#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmu/term.hpp"
#include "fmu/type.hpp"

namespace fmu {

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckOptions {
  // Ignore annotations that mention unbound type variable names (as left
  // behind by type-application steps) and infer those positions instead.
  bool lenient = false;
  // Types of free term variables, e.g. the hole variable of a context.
  std::map<std::string, TypePtr> free_vars;
};

// True iff every free type variable of `t` is in `delta`.
bool check_type(const std::vector<std::string>& delta, const TypePtr& t);

// Synthesizes (expected == nullptr) or checks the type of `e`. Locations are
// typed `ref nat`. Throws TypeError.
TypePtr typecheck(const TermPtr& e, const TypePtr& expected = nullptr, const CheckOptions& opts = {});

struct Elaboration {
  TypePtr type;
  TermPtr term;  // every lambda, type application, pack and fold annotated
};
Elaboration elaborate(const TermPtr& e, const TypePtr& expected = nullptr, const CheckOptions& opts = {});

}  // namespace fmu
