#include "fmu/type.hpp"

#include <functional>
#include <sstream>
#include <vector>

namespace fmu {
namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

TypePtr make(TypeTag tag, TypePtr lhs = nullptr, TypePtr rhs = nullptr) {
  auto t = std::make_shared<Type>();
  t->tag = tag;
  t->lhs = std::move(lhs);
  t->rhs = std::move(rhs);
  size_t h = static_cast<size_t>(tag) * 1315423911u;
  uint32_t loose = 0;
  for (const TypePtr* c : {&t->lhs, &t->rhs}) {
    if (!*c) continue;
    h = mix(h, (*c)->hash);
    t->has_meta = t->has_meta || (*c)->has_meta;
    loose = std::max(loose, (*c)->loose);
  }
  if (is_binder(tag)) loose = loose > 0 ? loose - 1 : 0;
  t->loose = loose;
  t->hash = h;
  return t;
}

TypePtr finish(std::shared_ptr<Type> t) { return t; }

// Generic structural map over types, tracking binder depth.
TypePtr map_type(const TypePtr& t, uint32_t depth,
                 const std::function<TypePtr(const TypePtr&, uint32_t)>& leaf) {
  switch (t->tag) {
    case TypeTag::Bound:
    case TypeTag::Free:
    case TypeTag::Meta:
      return leaf(t, depth);
    case TypeTag::Unit:
    case TypeTag::Nat:
    case TypeTag::RefNat:
      return t;
    case TypeTag::Prod:
    case TypeTag::Sum:
    case TypeTag::Arrow: {
      TypePtr a = map_type(t->lhs, depth, leaf);
      TypePtr b = map_type(t->rhs, depth, leaf);
      if (a == t->lhs && b == t->rhs) return t;
      return make(t->tag, a, b);
    }
    case TypeTag::Mu:
    case TypeTag::All:
    case TypeTag::Ex: {
      TypePtr body = map_type(t->lhs, depth + 1, leaf);
      if (body == t->lhs) return t;
      auto out = std::const_pointer_cast<Type>(make(t->tag, body));
      out->name = t->name;
      return out;
    }
  }
  return t;
}

}  // namespace

namespace ty {

TypePtr unit() {
  static const TypePtr u = make(TypeTag::Unit);
  return u;
}
TypePtr nat() {
  static const TypePtr n = make(TypeTag::Nat);
  return n;
}
TypePtr ref_nat() {
  static const TypePtr r = make(TypeTag::RefNat);
  return r;
}
TypePtr bound(uint32_t index) {
  auto t = std::const_pointer_cast<Type>(make(TypeTag::Bound));
  t->index = index;
  t->loose = index + 1;
  t->hash = mix(t->hash, index);
  return t;
}
TypePtr free(std::string name, uint64_t id) {
  auto t = std::const_pointer_cast<Type>(make(TypeTag::Free));
  t->hash = mix(mix(t->hash, std::hash<std::string>{}(name)), id);
  t->name = std::move(name);
  t->id = id;
  return t;
}
TypePtr meta(uint32_t id) {
  auto t = std::const_pointer_cast<Type>(make(TypeTag::Meta));
  t->index = id;
  t->has_meta = true;
  t->hash = mix(t->hash, id);
  return t;
}
TypePtr prod(TypePtr a, TypePtr b) { return make(TypeTag::Prod, std::move(a), std::move(b)); }
TypePtr sum(TypePtr a, TypePtr b) { return make(TypeTag::Sum, std::move(a), std::move(b)); }
TypePtr arrow(TypePtr a, TypePtr b) { return make(TypeTag::Arrow, std::move(a), std::move(b)); }

static TypePtr binder(TypeTag tag, std::string hint, TypePtr body) {
  auto t = std::const_pointer_cast<Type>(make(tag, std::move(body)));
  t->name = std::move(hint);
  return finish(t);
}
TypePtr mu_raw(std::string hint, TypePtr body) { return binder(TypeTag::Mu, std::move(hint), std::move(body)); }
TypePtr all_raw(std::string hint, TypePtr body) { return binder(TypeTag::All, std::move(hint), std::move(body)); }
TypePtr ex_raw(std::string hint, TypePtr body) { return binder(TypeTag::Ex, std::move(hint), std::move(body)); }
TypePtr mu(const std::string& name, const TypePtr& body) { return mu_raw(name, close_type(body, name, 0)); }
TypePtr all(const std::string& name, const TypePtr& body) { return all_raw(name, close_type(body, name, 0)); }
TypePtr ex(const std::string& name, const TypePtr& body) { return ex_raw(name, close_type(body, name, 0)); }
TypePtr boolean() {
  static const TypePtr b = sum(unit(), unit());
  return b;
}

}  // namespace ty

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->tag != b->tag) return false;
  switch (a->tag) {
    case TypeTag::Bound:
    case TypeTag::Meta:
      return a->index == b->index;
    case TypeTag::Free:
      return a->id == b->id && a->name == b->name;
    case TypeTag::Unit:
    case TypeTag::Nat:
    case TypeTag::RefNat:
      return true;
    default:
      return type_equal(a->lhs, b->lhs) && type_equal(a->rhs, b->rhs);
  }
}

TypePtr open_type(const TypePtr& body, const TypePtr& with) {
  if (body->loose == 0) return body;
  return map_type(body, 0, [&](const TypePtr& leaf, uint32_t depth) -> TypePtr {
    if (leaf->tag != TypeTag::Bound) return leaf;
    if (leaf->index == depth) return with;
    if (leaf->index > depth) return ty::bound(leaf->index - 1);
    return leaf;
  });
}

TypePtr close_type(const TypePtr& t, const std::string& name, uint64_t id) {
  return map_type(t, 0, [&](const TypePtr& leaf, uint32_t depth) -> TypePtr {
    if (leaf->tag == TypeTag::Free && leaf->name == name && leaf->id == id) return ty::bound(depth);
    return leaf;
  });
}

TypePtr subst_free_type(const TypePtr& t, const std::string& name, const TypePtr& with) {
  return map_type(t, 0, [&](const TypePtr& leaf, uint32_t) -> TypePtr {
    if (leaf->tag == TypeTag::Free && leaf->id == 0 && leaf->name == name) return with;
    return leaf;
  });
}

namespace {

// Precedence: 0 arrow, 1 sum, 2 product, 3 atom.
void print_type(std::ostream& os, const TypePtr& t, int prec, std::vector<std::string>& scope) {
  auto paren = [&](int mine, auto body) {
    if (mine < prec) os << "(";
    body();
    if (mine < prec) os << ")";
  };
  switch (t->tag) {
    case TypeTag::Bound:
      if (t->index < scope.size())
        os << scope[scope.size() - 1 - t->index];
      else
        os << "^" << t->index;
      return;
    case TypeTag::Free:
      os << t->name;
      return;
    case TypeTag::Meta:
      os << "?" << t->index;
      return;
    case TypeTag::Unit:
      os << "unit";
      return;
    case TypeTag::Nat:
      os << "nat";
      return;
    case TypeTag::RefNat:
      os << "ref nat";
      return;
    case TypeTag::Arrow:
      paren(0, [&] {
        print_type(os, t->lhs, 1, scope);
        os << " -> ";
        print_type(os, t->rhs, 0, scope);
      });
      return;
    case TypeTag::Sum:
      paren(1, [&] {
        print_type(os, t->lhs, 2, scope);
        os << " + ";
        print_type(os, t->rhs, 1, scope);
      });
      return;
    case TypeTag::Prod:
      paren(2, [&] {
        print_type(os, t->lhs, 3, scope);
        os << " * ";
        print_type(os, t->rhs, 2, scope);
      });
      return;
    case TypeTag::Mu:
    case TypeTag::All:
    case TypeTag::Ex: {
      std::string base = t->name.empty() ? "t" : t->name;
      std::string name = base;
      auto taken = [&](const std::string& n) {
        for (const auto& s : scope)
          if (s == n) return true;
        bool clash = false;
        all_free_names(t, [&](const std::string& fn, uint64_t) {
          if (fn == n) clash = true;
          return true;
        });
        return clash;
      };
      for (int i = 1; taken(name); ++i) name = base + std::to_string(i);
      const char* kw = t->tag == TypeTag::Mu ? "mu " : t->tag == TypeTag::All ? "all " : "ex ";
      // Binders extend to the right; parenthesize unless in rightmost slot.
      bool wrap = prec > 0;
      if (wrap) os << "(";
      os << kw << name << ". ";
      scope.push_back(name);
      print_type(os, t->lhs, 0, scope);
      scope.pop_back();
      if (wrap) os << ")";
      return;
    }
  }
}

}  // namespace

std::string pretty_type(const TypePtr& t) {
  std::ostringstream os;
  std::vector<std::string> scope;
  print_type(os, t, 0, scope);
  return os.str();
}

}  // namespace fmu
