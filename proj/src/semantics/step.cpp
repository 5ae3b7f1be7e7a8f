#include <algorithm>

#include "fmu/context.hpp"
#include "fmu/semantics.hpp"

namespace fmu {
namespace {

struct Out {
  TermPtr term;
  bool heap_changed = false;
  Heap heap;
  uint64_t denom = 1;
  StepKind kind = StepKind::Other;
};

enum class R { Value, Stuck, Stepped };

// Applies a head rule to `t`, whose evaluation positions hold values.
R head_step(const TermPtr& t, const Heap& h, std::vector<Out>& out) {
  if (!is_basic_redex(t)) return R::Stuck;
  const TermPtr& a = t->kids[0];
  auto one = [&](TermPtr r, StepKind k = StepKind::Other) { out.push_back(Out{std::move(r), false, {}, 1, k}); };
  switch (t->tag) {
    case Tag::Rand:
      for (uint64_t v = 1; v <= a->n; ++v) out.push_back(Out{tm::num(v), false, {}, a->n, StepKind::Choice});
      break;
    case Tag::Pred:
      one(tm::num(std::max<uint64_t>(a->n - 1, 1)));
      break;
    case Tag::Succ:
      one(tm::num(a->n + 1));
      break;
    case Tag::Ifz:
      one(a->n == 1 ? t->kids[1] : t->kids[2]);
      break;
    case Tag::Proj:
      one(a->kids[t->n == 1 ? 0 : 1]);
      break;
    case Tag::App:
      one(open_term(a->kids[0], t->kids[1]));
      break;
    case Tag::Match:
      one(open_term(t->kids[a->tag == Tag::Inl ? 1 : 2], a->kids[0]));
      break;
    case Tag::TApp:
      one(a->kids[0]);
      break;
    case Tag::Unpack:
      one(open_term(t->kids[1], a->kids[0]));
      break;
    case Tag::Unfold:
      one(a->kids[0], StepKind::UnfoldFold);
      break;
    case Tag::Ref: {
      Heap nh = h;
      nh.push_back(a->n);
      out.push_back(Out{tm::loc(h.size()), true, std::move(nh), 1, StepKind::Other});
      break;
    }
    case Tag::Deref:
      if (a->n >= h.size()) return R::Stuck;
      one(tm::num(h[a->n]));
      break;
    case Tag::Assign: {
      if (a->n >= h.size()) return R::Stuck;
      Heap nh = h;
      nh[a->n] = t->kids[1]->n;
      out.push_back(Out{tm::unit(), true, std::move(nh), 1, StepKind::Other});
      break;
    }
    default:
      return R::Stuck;
  }
  return R::Stepped;
}

R step_rec(const TermPtr& t, const Heap& h, std::vector<Out>& out) {
  if (t->value) return R::Value;
  size_t np = eval_positions(t->tag);
  for (size_t i = 0; i < np; ++i) {
    const TermPtr& k = t->kids[i];
    if (k->value) continue;
    size_t start = out.size();
    R r = step_rec(k, h, out);
    if (r != R::Stepped) return R::Stuck;
    for (size_t j = start; j < out.size(); ++j) {
      std::array<TermPtr, 3> ks = t->kids;
      ks[i] = out[j].term;
      out[j].term = with_kids(t, ks[0], ks[1], ks[2]);
    }
    return r;
  }
  return head_step(t, h, out);
}

std::vector<WeightedStep> finish(const Config& c, std::vector<Out>& out) {
  std::vector<WeightedStep> steps;
  steps.reserve(out.size());
  for (Out& o : out) {
    Rational w(1, o.denom);
    w.canonicalize();
    steps.push_back(
        WeightedStep{w, make_config(o.term, o.heap_changed ? std::move(o.heap) : c.heap), o.kind});
  }
  return steps;
}

}  // namespace

Status status(const Config& c) {
  if (c.term->value) return Status::Value;
  return decompose(c.term).kind == DecompKind::Stuck ? Status::Stuck : Status::Live;
}

std::vector<WeightedStep> step_successors(const Config& c) {
  std::vector<Out> out;
  if (step_rec(c.term, c.heap, out) != R::Stepped) return {};
  return finish(c, out);
}

std::vector<WeightedStep> step_via_decompose(const Config& c) {
  Decomposition d = decompose(c.term);
  if (d.kind != DecompKind::Redex) return {};
  std::vector<Out> out;
  if (head_step(d.redex, c.heap, out) != R::Stepped) return {};
  for (Out& o : out) o.term = plug(d.context, o.term);
  return finish(c, out);
}

CuffResult cuff_normalize(const Config& c, size_t budget) {
  Config cur = c;
  for (size_t steps = 0;; ++steps) {
    if (cur.term->value) return {CuffOutcome::Value, cur, steps};
    std::vector<WeightedStep> succ = step_successors(cur);
    if (succ.empty()) return {CuffOutcome::Stuck, cur, steps};
    if (succ.front().kind != StepKind::Other) return {CuffOutcome::AtChoiceOrUnfold, cur, steps};
    if (steps >= budget) return {CuffOutcome::BudgetExceeded, cur, steps};
    cur = std::move(succ.front().target);
  }
}

}  // namespace fmu
