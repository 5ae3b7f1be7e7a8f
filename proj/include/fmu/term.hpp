#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fmu/type.hpp"

namespace fmu {

// Term syntax, locally nameless. Bound term variables are de Bruijn indices
// (BVar); free variables are names (FVar). Binder names and type annotations
// are metadata: term_equal and the hash ignore them, so equality is
// alpha-equivalence on the erased term.
enum class Tag : uint8_t {
  BVar,
  FVar,
  Unit,
  Num,
  Rand,
  Ifz,
  Pred,
  Succ,
  Pair,
  Proj,
  Fun,
  App,
  Inl,
  Inr,
  Match,
  TFun,
  TApp,
  Pack,
  Unpack,
  Fold,
  Unfold,
  Loc,
  Ref,
  Assign,
  Deref,
  Hole,  // evaluation-context hole; never in programs
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Tag tag;
  uint64_t n = 0;  // numeral value, BVar index, projection (1|2), location
  // FVar: the name. Fun/Unpack/Match: term binder hint (Match: first branch).
  std::string name;
  // Match: second branch binder hint. TFun/Unpack: optional type binder name.
  std::string name2;
  // Fun: parameter type. TApp: instantiation. Pack: existential type.
  // Fold: mu ascription. All optional.
  TypePtr ann;
  std::array<TermPtr, 3> kids{};

  uint32_t loose = 0;  // 1 + largest loose BVar index (0 = no loose vars)
  bool has_fvar = false;
  bool has_loc = false;
  bool has_hole = false;
  bool has_ann = false;
  bool value = false;  // in the value grammar (closed-ness not implied)
  size_t hash = 0;

  const TermPtr& kid(size_t i) const { return kids[i]; }
};

bool term_equal(const TermPtr& a, const TermPtr& b);

struct TermHash {
  size_t operator()(const TermPtr& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return term_equal(a, b); }
};

inline bool is_closed(const TermPtr& t) { return t->loose == 0 && !t->has_fvar; }

namespace tm {
TermPtr bvar(uint64_t index, std::string hint = "");
TermPtr var(std::string name);
TermPtr unit();
TermPtr num(uint64_t n);
TermPtr rand(TermPtr e);
TermPtr ifz(TermPtr c, TermPtr then_branch, TermPtr else_branch);
TermPtr pred(TermPtr e);
TermPtr succ(TermPtr e);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr proj(int i, TermPtr e);
TermPtr app(TermPtr f, TermPtr a);
TermPtr app(TermPtr f, TermPtr a, TermPtr b);
TermPtr inl(TermPtr e);
TermPtr inr(TermPtr e);
TermPtr tapp(TermPtr e, TypePtr ann = nullptr);
TermPtr pack(TermPtr e, TypePtr ann = nullptr);
TermPtr fold(TermPtr e, TypePtr ann = nullptr);
TermPtr unfold(TermPtr e);
TermPtr loc(uint64_t l);
TermPtr ref(TermPtr e);
TermPtr assign(TermPtr target, TermPtr value);
TermPtr deref(TermPtr e);
TermPtr hole();

// Binder constructors taking bodies whose bound variable is BVar 0.
TermPtr fun_raw(std::string hint, TypePtr ann, TermPtr body);
TermPtr match_raw(TermPtr scrut, std::string x1, TermPtr b1, std::string x2, TermPtr b2);
TermPtr tfun(TermPtr body, std::string type_binder = "");
TermPtr unpack_raw(TermPtr scrut, std::string type_binder, std::string x, TermPtr body);

// Named convenience forms: the body mentions `x` as a free variable.
TermPtr lam(const std::string& x, TermPtr body);
TermPtr lam(const std::string& x, TypePtr ann, TermPtr body);
TermPtr match(TermPtr scrut, const std::string& x1, TermPtr b1, const std::string& x2, TermPtr b2);
TermPtr unpack(TermPtr scrut, const std::string& x, TermPtr body, std::string type_binder = "");

// Sugar.
TermPtr let(const std::string& x, TermPtr bound, TermPtr body);  // (fn x => body) bound
TermPtr seq(TermPtr first, TermPtr second);                      // (fn _ => second) first
TermPtr choice(TermPtr a, TermPtr b);                            // ifz (rand 2) then a else b
TermPtr tt();                                                    // inl ()
TermPtr ff();                                                    // inr ()
TermPtr if_bool(TermPtr c, TermPtr then_branch, TermPtr else_branch);
}  // namespace tm

// Rebuild a node with new children, keeping tag, payload and metadata.
TermPtr with_kids(const TermPtr& t, TermPtr k0, TermPtr k1 = nullptr, TermPtr k2 = nullptr);
TermPtr with_ann(const TermPtr& t, TypePtr ann);
size_t num_kids(Tag tag);
// Number of term variables bound by kid i of a node with this tag.
bool binds_term_var(Tag tag, size_t kid);

// ----- substitution -----

// Instantiate BVar 0 of a binder body with `value`; `value` must have no
// loose bound variables. Other loose indices shift down by one.
TermPtr open_term(const TermPtr& body, const TermPtr& value);
// Abstract the free variable `name` into BVar 0 (outermost binder level).
TermPtr close_term(const TermPtr& body, const std::string& name);
// Simultaneous substitution for free variables. Capture is impossible since
// bound variables are indices; pretty-printing renames binders as needed.
TermPtr substitute(const TermPtr& e, const std::map<std::string, TermPtr>& bindings);
// Substitute named free type variables inside annotations.
TermPtr substitute_types(const TermPtr& e, const std::map<std::string, TypePtr>& bindings);
// Drop all annotations (and type binder names); the TApp node is kept.
TermPtr erase(const TermPtr& e);
// Replace locations by the given mapping (old -> new).
TermPtr rename_locations(const TermPtr& e, const std::vector<uint64_t>& mapping);
// Plug the (unique) hole.
TermPtr plug_hole(const TermPtr& ctx, const TermPtr& e);

// Free variable names in order of first occurrence.
std::vector<std::string> free_vars(const TermPtr& e);
// Locations in left-to-right order of first occurrence.
std::vector<uint64_t> locations_in(const TermPtr& e);
size_t term_size(const TermPtr& e);

}  // namespace fmu
