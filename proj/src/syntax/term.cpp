#include "fmu/term.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace fmu {
namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

bool value_tag(const Term& t) {
  switch (t.tag) {
    case Tag::BVar:
    case Tag::FVar:
    case Tag::Unit:
    case Tag::Num:
    case Tag::Fun:
    case Tag::TFun:
    case Tag::Loc:
      return true;
    case Tag::Pair:
      return t.kids[0]->value && t.kids[1]->value;
    case Tag::Inl:
    case Tag::Inr:
    case Tag::Pack:
    case Tag::Fold:
      return t.kids[0]->value;
    default:
      return false;
  }
}

TermPtr make(Tag tag, uint64_t n, std::string name, std::string name2, TypePtr ann, TermPtr k0 = nullptr,
             TermPtr k1 = nullptr, TermPtr k2 = nullptr) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->n = n;
  t->name = std::move(name);
  t->name2 = std::move(name2);
  t->ann = std::move(ann);
  t->kids = {std::move(k0), std::move(k1), std::move(k2)};
  size_t h = static_cast<size_t>(tag) * 2654435761u + 17;
  switch (tag) {
    case Tag::BVar:
      t->loose = static_cast<uint32_t>(n) + 1;
      h = mix(h, n);
      break;
    case Tag::FVar:
      t->has_fvar = true;
      h = mix(h, std::hash<std::string>{}(t->name));
      break;
    case Tag::Num:
    case Tag::Proj:
      h = mix(h, n);
      break;
    case Tag::Loc:
      t->has_loc = true;
      h = mix(h, n);
      break;
    case Tag::Hole:
      t->has_hole = true;
      break;
    default:
      break;
  }
  t->has_ann = t->ann != nullptr;
  for (size_t i = 0; i < 3; ++i) {
    const TermPtr& k = t->kids[i];
    if (!k) continue;
    uint32_t l = k->loose;
    if (binds_term_var(tag, i) && l > 0) --l;
    t->loose = std::max(t->loose, l);
    t->has_fvar |= k->has_fvar;
    t->has_loc |= k->has_loc;
    t->has_hole |= k->has_hole;
    t->has_ann |= k->has_ann;
    h = mix(h, k->hash);
  }
  t->hash = h;
  t->value = value_tag(*t);
  return t;
}

// Structural rebuild over all nodes; `leaf` may replace a node (returning
// non-null) before its children are visited. Depth counts term binders.
using Visitor = std::function<TermPtr(const TermPtr&, uint32_t depth)>;

TermPtr rebuild(const TermPtr& t, uint32_t depth, const Visitor& pre) {
  if (TermPtr r = pre(t, depth)) return r;
  size_t nk = num_kids(t->tag);
  if (nk == 0) return t;
  std::array<TermPtr, 3> ks{};
  bool changed = false;
  for (size_t i = 0; i < nk; ++i) {
    ks[i] = rebuild(t->kids[i], depth + (binds_term_var(t->tag, i) ? 1 : 0), pre);
    changed |= ks[i] != t->kids[i];
  }
  if (!changed) return t;
  return with_kids(t, ks[0], ks[1], ks[2]);
}

}  // namespace

size_t num_kids(Tag tag) {
  switch (tag) {
    case Tag::BVar:
    case Tag::FVar:
    case Tag::Unit:
    case Tag::Num:
    case Tag::Loc:
    case Tag::Hole:
      return 0;
    case Tag::Pair:
    case Tag::App:
    case Tag::Assign:
    case Tag::Unpack:
      return 2;
    case Tag::Ifz:
    case Tag::Match:
      return 3;
    default:
      return 1;
  }
}

bool binds_term_var(Tag tag, size_t kid) {
  switch (tag) {
    case Tag::Fun:
      return kid == 0;
    case Tag::Unpack:
      return kid == 1;
    case Tag::Match:
      return kid == 1 || kid == 2;
    default:
      return false;
  }
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->tag != b->tag || a->n != b->n) return false;
  if (a->tag == Tag::FVar) return a->name == b->name;
  for (size_t i = 0, nk = num_kids(a->tag); i < nk; ++i)
    if (!term_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

TermPtr with_kids(const TermPtr& t, TermPtr k0, TermPtr k1, TermPtr k2) {
  return make(t->tag, t->n, t->name, t->name2, t->ann, std::move(k0), std::move(k1), std::move(k2));
}

TermPtr with_ann(const TermPtr& t, TypePtr ann) {
  return make(t->tag, t->n, t->name, t->name2, std::move(ann), t->kids[0], t->kids[1], t->kids[2]);
}

namespace tm {

TermPtr bvar(uint64_t index, std::string hint) { return make(Tag::BVar, index, std::move(hint), "", nullptr); }
TermPtr var(std::string name) { return make(Tag::FVar, 0, std::move(name), "", nullptr); }
TermPtr unit() {
  static const TermPtr u = make(Tag::Unit, 0, "", "", nullptr);
  return u;
}
TermPtr num(uint64_t n) {
  if (n == 0) throw std::invalid_argument("numerals start at 1");
  return make(Tag::Num, n, "", "", nullptr);
}
TermPtr rand(TermPtr e) { return make(Tag::Rand, 0, "", "", nullptr, std::move(e)); }
TermPtr ifz(TermPtr c, TermPtr t, TermPtr e) {
  return make(Tag::Ifz, 0, "", "", nullptr, std::move(c), std::move(t), std::move(e));
}
TermPtr pred(TermPtr e) { return make(Tag::Pred, 0, "", "", nullptr, std::move(e)); }
TermPtr succ(TermPtr e) { return make(Tag::Succ, 0, "", "", nullptr, std::move(e)); }
TermPtr pair(TermPtr a, TermPtr b) { return make(Tag::Pair, 0, "", "", nullptr, std::move(a), std::move(b)); }
TermPtr proj(int i, TermPtr e) { return make(Tag::Proj, static_cast<uint64_t>(i), "", "", nullptr, std::move(e)); }
TermPtr app(TermPtr f, TermPtr a) { return make(Tag::App, 0, "", "", nullptr, std::move(f), std::move(a)); }
TermPtr app(TermPtr f, TermPtr a, TermPtr b) { return app(app(std::move(f), std::move(a)), std::move(b)); }
TermPtr inl(TermPtr e) { return make(Tag::Inl, 0, "", "", nullptr, std::move(e)); }
TermPtr inr(TermPtr e) { return make(Tag::Inr, 0, "", "", nullptr, std::move(e)); }
TermPtr tapp(TermPtr e, TypePtr ann) { return make(Tag::TApp, 0, "", "", std::move(ann), std::move(e)); }
TermPtr pack(TermPtr e, TypePtr ann) { return make(Tag::Pack, 0, "", "", std::move(ann), std::move(e)); }
TermPtr fold(TermPtr e, TypePtr ann) { return make(Tag::Fold, 0, "", "", std::move(ann), std::move(e)); }
TermPtr unfold(TermPtr e) { return make(Tag::Unfold, 0, "", "", nullptr, std::move(e)); }
TermPtr loc(uint64_t l) { return make(Tag::Loc, l, "", "", nullptr); }
TermPtr ref(TermPtr e) { return make(Tag::Ref, 0, "", "", nullptr, std::move(e)); }
TermPtr assign(TermPtr target, TermPtr value) {
  return make(Tag::Assign, 0, "", "", nullptr, std::move(target), std::move(value));
}
TermPtr deref(TermPtr e) { return make(Tag::Deref, 0, "", "", nullptr, std::move(e)); }
TermPtr hole() {
  static const TermPtr h = make(Tag::Hole, 0, "", "", nullptr);
  return h;
}

TermPtr fun_raw(std::string hint, TypePtr ann, TermPtr body) {
  return make(Tag::Fun, 0, std::move(hint), "", std::move(ann), std::move(body));
}
TermPtr match_raw(TermPtr scrut, std::string x1, TermPtr b1, std::string x2, TermPtr b2) {
  return make(Tag::Match, 0, std::move(x1), std::move(x2), nullptr, std::move(scrut), std::move(b1), std::move(b2));
}
TermPtr tfun(TermPtr body, std::string type_binder) {
  return make(Tag::TFun, 0, "", std::move(type_binder), nullptr, std::move(body));
}
TermPtr unpack_raw(TermPtr scrut, std::string type_binder, std::string x, TermPtr body) {
  return make(Tag::Unpack, 0, std::move(x), std::move(type_binder), nullptr, std::move(scrut), std::move(body));
}

TermPtr lam(const std::string& x, TermPtr body) { return fun_raw(x, nullptr, close_term(body, x)); }
TermPtr lam(const std::string& x, TypePtr ann, TermPtr body) {
  return fun_raw(x, std::move(ann), close_term(body, x));
}
TermPtr match(TermPtr scrut, const std::string& x1, TermPtr b1, const std::string& x2, TermPtr b2) {
  return match_raw(std::move(scrut), x1, close_term(b1, x1), x2, close_term(b2, x2));
}
TermPtr unpack(TermPtr scrut, const std::string& x, TermPtr body, std::string type_binder) {
  return unpack_raw(std::move(scrut), std::move(type_binder), x, close_term(body, x));
}

TermPtr let(const std::string& x, TermPtr bound, TermPtr body) { return app(lam(x, std::move(body)), std::move(bound)); }
TermPtr seq(TermPtr first, TermPtr second) { return app(lam("_", std::move(second)), std::move(first)); }
TermPtr choice(TermPtr a, TermPtr b) { return ifz(rand(num(2)), std::move(a), std::move(b)); }
TermPtr tt() { return inl(unit()); }
TermPtr ff() { return inr(unit()); }
TermPtr if_bool(TermPtr c, TermPtr t, TermPtr e) { return match(std::move(c), "_", std::move(t), "_", std::move(e)); }

}  // namespace tm

TermPtr open_term(const TermPtr& body, const TermPtr& value) {
  if (body->loose == 0) return body;
  return rebuild(body, 0, [&](const TermPtr& t, uint32_t d) -> TermPtr {
    if (t->loose <= d) return t;
    if (t->tag != Tag::BVar) return nullptr;
    if (t->n == d) return value;
    return tm::bvar(t->n - 1, t->name);
  });
}

TermPtr close_term(const TermPtr& body, const std::string& name) {
  if (!body->has_fvar && body->loose == 0) return body;
  return rebuild(body, 0, [&](const TermPtr& t, uint32_t d) -> TermPtr {
    if (!t->has_fvar && t->loose <= d) return t;
    if (t->tag == Tag::FVar) return t->name == name ? tm::bvar(d, name) : t;
    if (t->tag == Tag::BVar) return t->n >= d ? tm::bvar(t->n + 1, t->name) : t;
    return nullptr;
  });
}

TermPtr substitute(const TermPtr& e, const std::map<std::string, TermPtr>& bindings) {
  if (bindings.empty() || !e->has_fvar) return e;
  return rebuild(e, 0, [&](const TermPtr& t, uint32_t) -> TermPtr {
    if (!t->has_fvar) return t;
    if (t->tag != Tag::FVar) return nullptr;
    auto it = bindings.find(t->name);
    return it == bindings.end() ? t : it->second;
  });
}

TermPtr substitute_types(const TermPtr& e, const std::map<std::string, TypePtr>& bindings) {
  if (bindings.empty() || !e->has_ann) return e;
  std::function<TermPtr(const TermPtr&, const std::map<std::string, TypePtr>&)> go =
      [&](const TermPtr& t, const std::map<std::string, TypePtr>& b) -> TermPtr {
    if (!t->has_ann || b.empty()) return t;
    const std::map<std::string, TypePtr>* scope = &b;
    std::map<std::string, TypePtr> inner;
    if ((t->tag == Tag::TFun || t->tag == Tag::Unpack) && !t->name2.empty() && b.count(t->name2)) {
      inner = b;
      inner.erase(t->name2);
      scope = &inner;
    }
    TypePtr ann = t->ann;
    if (ann)
      for (const auto& [name, with] : b) ann = subst_free_type(ann, name, with);
    std::array<TermPtr, 3> ks{};
    for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i) {
      // Unpack's scrutinee is outside the type binder.
      const auto& s = (t->tag == Tag::Unpack && i == 0) ? b : *scope;
      ks[i] = go(t->kids[i], s);
    }
    return make(t->tag, t->n, t->name, t->name2, ann, ks[0], ks[1], ks[2]);
  };
  return go(e, bindings);
}

TermPtr erase(const TermPtr& e) {
  if (!e->has_ann && e->tag != Tag::TFun && e->tag != Tag::Unpack) {
    bool names = false;
    std::function<void(const TermPtr&)> scan = [&](const TermPtr& t) {
      if (names) return;
      if ((t->tag == Tag::TFun || t->tag == Tag::Unpack) && !t->name2.empty()) names = true;
      for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i) scan(t->kids[i]);
    };
    scan(e);
    if (!names) return e;
  }
  std::array<TermPtr, 3> ks{};
  for (size_t i = 0, nk = num_kids(e->tag); i < nk; ++i) ks[i] = erase(e->kids[i]);
  return make(e->tag, e->n, e->name, "", nullptr, ks[0], ks[1], ks[2]);
}

TermPtr rename_locations(const TermPtr& e, const std::vector<uint64_t>& mapping) {
  if (!e->has_loc) return e;
  return rebuild(e, 0, [&](const TermPtr& t, uint32_t) -> TermPtr {
    if (!t->has_loc) return t;
    if (t->tag == Tag::Loc) return tm::loc(mapping.at(t->n));
    return nullptr;
  });
}

TermPtr plug_hole(const TermPtr& ctx, const TermPtr& e) {
  return rebuild(ctx, 0, [&](const TermPtr& t, uint32_t) -> TermPtr {
    if (!t->has_hole) return t;
    if (t->tag == Tag::Hole) return e;
    return nullptr;
  });
}

std::vector<std::string> free_vars(const TermPtr& e) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& t) {
    if (!t->has_fvar) return;
    if (t->tag == Tag::FVar) {
      if (seen.insert(t->name).second) out.push_back(t->name);
      return;
    }
    for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i) go(t->kids[i]);
  };
  go(e);
  return out;
}

std::vector<uint64_t> locations_in(const TermPtr& e) {
  std::vector<uint64_t> out;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& t) {
    if (!t->has_loc) return;
    if (t->tag == Tag::Loc) {
      if (std::find(out.begin(), out.end(), t->n) == out.end()) out.push_back(t->n);
      return;
    }
    for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i) go(t->kids[i]);
  };
  go(e);
  return out;
}

size_t term_size(const TermPtr& e) {
  size_t s = 1;
  for (size_t i = 0, nk = num_kids(e->tag); i < nk; ++i) s += term_size(e->kids[i]);
  return s;
}

}  // namespace fmu
