#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace fmu {

// Types use a locally nameless representation: variables bound by mu/all/ex
// are de Bruijn indices, everything else is a named (or numbered) free
// variable. Structural equality is therefore alpha-equivalence.
enum class TypeTag : uint8_t {
  Bound,  // de Bruijn index
  Free,   // named type variable; id > 0 once resolved by the checker
  Meta,   // unification variable, checker-internal
  Unit,
  Nat,
  Prod,
  Sum,
  Arrow,
  Mu,
  All,
  Ex,
  RefNat,
};

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  TypeTag tag;
  uint32_t index = 0;  // Bound index or Meta id
  uint64_t id = 0;     // Free: checker-assigned identity (0 = by name only)
  std::string name;    // Free name, or binder hint for Mu/All/Ex
  TypePtr lhs, rhs;    // children; binders keep their body in lhs
  uint32_t loose = 0;  // 1 + largest loose Bound index (0 = locally closed)
  bool has_meta = false;
  size_t hash = 0;
};

namespace ty {
TypePtr unit();
TypePtr nat();
TypePtr ref_nat();
TypePtr bound(uint32_t index);
TypePtr free(std::string name, uint64_t id = 0);
TypePtr meta(uint32_t id);
TypePtr prod(TypePtr a, TypePtr b);
TypePtr sum(TypePtr a, TypePtr b);
TypePtr arrow(TypePtr a, TypePtr b);
// Binder constructors take an already-abstracted body (index 0 = the binder).
TypePtr mu_raw(std::string hint, TypePtr body);
TypePtr all_raw(std::string hint, TypePtr body);
TypePtr ex_raw(std::string hint, TypePtr body);
// Convenience: abstract the free variable `name` (id 0) out of `body`.
TypePtr mu(const std::string& name, const TypePtr& body);
TypePtr all(const std::string& name, const TypePtr& body);
TypePtr ex(const std::string& name, const TypePtr& body);
TypePtr boolean();  // unit + unit
}  // namespace ty

bool type_equal(const TypePtr& a, const TypePtr& b);

inline bool is_binder(TypeTag t) { return t == TypeTag::Mu || t == TypeTag::All || t == TypeTag::Ex; }

// Replace Bound(0) in a binder body by `with` (which must be locally closed).
TypePtr open_type(const TypePtr& body, const TypePtr& with);
// Abstract free variable (name, id) to Bound(0) at the outermost level.
TypePtr close_type(const TypePtr& t, const std::string& name, uint64_t id);
// Substitute free variables matched by name (id 0 only).
TypePtr subst_free_type(const TypePtr& t, const std::string& name, const TypePtr& with);

// True iff every free type variable name of `t` satisfies `in_scope`.
template <typename Pred>
bool all_free_names(const TypePtr& t, Pred in_scope) {
  if (!t) return true;
  if (t->tag == TypeTag::Free) return in_scope(t->name, t->id);
  return all_free_names(t->lhs, in_scope) && all_free_names(t->rhs, in_scope);
}

std::string pretty_type(const TypePtr& t);

}  // namespace fmu
