#include "fmu/context.hpp"

namespace fmu {

bool is_basic_redex(const TermPtr& t) {
  const TermPtr& a = t->kids[0];
  switch (t->tag) {
    case Tag::Rand:
    case Tag::Pred:
    case Tag::Succ:
    case Tag::Ifz:
    case Tag::Ref:
      return a->tag == Tag::Num;
    case Tag::Proj:
      return a->tag == Tag::Pair;
    case Tag::App:
      return a->tag == Tag::Fun;
    case Tag::Match:
      return a->tag == Tag::Inl || a->tag == Tag::Inr;
    case Tag::TApp:
      return a->tag == Tag::TFun;
    case Tag::Unpack:
      return a->tag == Tag::Pack;
    case Tag::Unfold:
      return a->tag == Tag::Fold;
    case Tag::Deref:
      return a->tag == Tag::Loc;
    case Tag::Assign:
      return a->tag == Tag::Loc && t->kids[1]->tag == Tag::Num;
    default:
      return false;
  }
}

// Number of leading kids evaluated before the node itself reduces.
size_t eval_positions(Tag tag) {
  switch (tag) {
    case Tag::Pair:
    case Tag::App:
    case Tag::Assign:
      return 2;
    case Tag::Fun:
    case Tag::TFun:
    case Tag::BVar:
    case Tag::FVar:
    case Tag::Unit:
    case Tag::Num:
    case Tag::Loc:
    case Tag::Hole:
      return 0;
    default:
      return 1;
  }
}

Decomposition decompose(const TermPtr& e) {
  if (e->value) return {DecompKind::Value, nullptr, nullptr};
  size_t np = eval_positions(e->tag);
  for (size_t i = 0; i < np; ++i) {
    const TermPtr& k = e->kids[i];
    if (k->value) continue;
    Decomposition inner = decompose(k);
    if (inner.kind != DecompKind::Redex) return {DecompKind::Stuck, nullptr, nullptr};
    std::array<TermPtr, 3> ks = e->kids;
    ks[i] = inner.context;
    return {DecompKind::Redex, with_kids(e, ks[0], ks[1], ks[2]), inner.redex};
  }
  if (is_basic_redex(e)) return {DecompKind::Redex, tm::hole(), e};
  return {DecompKind::Stuck, nullptr, nullptr};
}

bool is_eval_context(const TermPtr& ctx) {
  if (ctx->tag == Tag::Hole) return true;
  if (!ctx->has_hole) return false;
  size_t np = eval_positions(ctx->tag);
  for (size_t i = 0; i < np; ++i) {
    const TermPtr& k = ctx->kids[i];
    if (k->has_hole) return is_eval_context(k);
    if (!k->value) return false;
  }
  return false;
}

}  // namespace fmu
