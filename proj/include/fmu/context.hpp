#pragma once

#include "fmu/term.hpp"

namespace fmu {

// An evaluation context is a term with exactly one Hole, located in an
// evaluation position.
using EvalContext = TermPtr;

enum class DecompKind { Value, Stuck, Redex };

struct Decomposition {
  DecompKind kind;
  EvalContext context;  // Redex only
  TermPtr redex;        // Redex only
};

Decomposition decompose(const TermPtr& e);

inline TermPtr plug(const EvalContext& ctx, const TermPtr& e) { return plug_hole(ctx, e); }
// (E o E')[e] = E[E'[e]]
inline EvalContext compose(const EvalContext& outer, const EvalContext& inner) { return plug_hole(outer, inner); }

// Number of leading children evaluated before a node of this tag reduces.
size_t eval_positions(Tag tag);
// Head reduction applies once all evaluation positions hold values.
bool is_basic_redex(const TermPtr& t);

// True iff the hole of `ctx` sits in an evaluation position.
bool is_eval_context(const TermPtr& ctx);

}  // namespace fmu
