#include "fmu/typecheck.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fmu/pretty.hpp"

namespace fmu {
namespace {

struct Result {
  TypePtr type;
  TermPtr term;
};

struct Meta {
  TypePtr solution;
  uint64_t level;  // Free ids below this are in scope for the solution
};

class Checker {
 public:
  explicit Checker(const CheckOptions& opts) : opts_(opts) {}

  Result run(const TermPtr& e, const TypePtr& expected) {
    TypePtr exp;
    if (expected) {
      if (!all_free_names(expected, [](const std::string&, uint64_t) { return false; }))
        throw TypeError("expected type " + pretty_type(expected) + " is not closed");
      exp = expected;
    }
    Result r = go(e, exp);
    TypePtr t = zonk(r.type);
    if (t->has_meta)
      throw TypeError("missing annotation: cannot determine the type of " + show(e) + " (got " + pretty_type(t) + ")");
    return {t, r.term};
  }

  TermPtr finalize(const TermPtr& t) {
    std::vector<std::string> scope;
    return fin(t, scope);
  }

 private:
  const CheckOptions& opts_;
  std::vector<Meta> metas_;
  uint64_t next_id_ = 1;
  std::vector<std::pair<std::string, uint64_t>> delta_;
  std::vector<TypePtr> gamma_;
  std::map<uint64_t, std::string> id_names_;
  std::map<uint64_t, std::string> display_;

  std::vector<std::string> names_;  // binder hints parallel to gamma_

  void bind_var(TypePtr t, const std::string& hint) {
    gamma_.push_back(std::move(t));
    names_.push_back(hint.empty() ? "_" : hint);
  }
  void unbind_var() {
    gamma_.pop_back();
    names_.pop_back();
  }

  // Loose indices are shown as the names of the binders in scope.
  std::string show(TermPtr t) const {
    for (size_t i = 0; i < t->loose && i < names_.size(); ++i) t = open_term(t, tm::var(names_[names_.size() - 1 - i]));
    std::string s = pretty(t);
    if (s.size() > 80) s = s.substr(0, 77) + "...";
    return "'" + s + "'";
  }

  [[noreturn]] void mismatch(const TermPtr& at, const TypePtr& want, const TypePtr& got) {
    throw TypeError("type mismatch in " + show(at) + ": expected " + pretty_type(zonk(want)) + ", found " +
                    pretty_type(zonk(got)));
  }

  TypePtr fresh_meta() {
    metas_.push_back({nullptr, next_id_});
    return ty::meta(static_cast<uint32_t>(metas_.size() - 1));
  }

  TypePtr head(TypePtr t) {
    while (t->tag == TypeTag::Meta && metas_[t->index].solution) t = metas_[t->index].solution;
    return t;
  }

  TypePtr zonk(const TypePtr& t) {
    if (!t->has_meta) return t;
    switch (t->tag) {
      case TypeTag::Meta: {
        TypePtr h = head(t);
        return h->tag == TypeTag::Meta ? h : zonk(h);
      }
      case TypeTag::Prod:
        return ty::prod(zonk(t->lhs), zonk(t->rhs));
      case TypeTag::Sum:
        return ty::sum(zonk(t->lhs), zonk(t->rhs));
      case TypeTag::Arrow:
        return ty::arrow(zonk(t->lhs), zonk(t->rhs));
      case TypeTag::Mu:
        return ty::mu_raw(t->name, zonk(t->lhs));
      case TypeTag::All:
        return ty::all_raw(t->name, zonk(t->lhs));
      case TypeTag::Ex:
        return ty::ex_raw(t->name, zonk(t->lhs));
      default:
        return t;
    }
  }

  TypePtr default_metas(const TypePtr& t) {
    TypePtr z = zonk(t);
    if (!z->has_meta) return z;
    std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& x) -> TypePtr {
      if (!x->has_meta) return x;
      switch (x->tag) {
        case TypeTag::Meta:
          return ty::unit();
        case TypeTag::Prod:
          return ty::prod(go(x->lhs), go(x->rhs));
        case TypeTag::Sum:
          return ty::sum(go(x->lhs), go(x->rhs));
        case TypeTag::Arrow:
          return ty::arrow(go(x->lhs), go(x->rhs));
        case TypeTag::Mu:
          return ty::mu_raw(x->name, go(x->lhs));
        case TypeTag::All:
          return ty::all_raw(x->name, go(x->lhs));
        case TypeTag::Ex:
          return ty::ex_raw(x->name, go(x->lhs));
        default:
          return x;
      }
    };
    return go(z);
  }

  bool bind(uint32_t m, const TypePtr& t) {
    TypePtr z = zonk(t);
    if (z->loose > 0) return false;
    bool ok = true;
    std::function<void(const TypePtr&)> scan = [&](const TypePtr& x) {
      if (!x || !ok) return;
      if (x->tag == TypeTag::Meta) {
        if (x->index == m) ok = false;
        auto& lv = metas_[x->index].level;
        lv = std::min(lv, metas_[m].level);
        return;
      }
      if (x->tag == TypeTag::Free && x->id >= metas_[m].level) ok = false;
      scan(x->lhs);
      scan(x->rhs);
    };
    scan(z);
    if (!ok) return false;
    metas_[m].solution = z;
    return true;
  }

  bool unify(const TypePtr& a0, const TypePtr& b0) {
    TypePtr a = head(a0), b = head(b0);
    if (a == b) return true;
    if (a->tag == TypeTag::Meta && b->tag == TypeTag::Meta && a->index == b->index) return true;
    if (a->tag == TypeTag::Meta) return bind(a->index, b);
    if (b->tag == TypeTag::Meta) return bind(b->index, a);
    if (a->tag != b->tag) return false;
    switch (a->tag) {
      case TypeTag::Bound:
        return a->index == b->index;
      case TypeTag::Free:
        return a->id == b->id && a->name == b->name;
      case TypeTag::Unit:
      case TypeTag::Nat:
      case TypeTag::RefNat:
        return true;
      case TypeTag::Mu:
      case TypeTag::All:
      case TypeTag::Ex:
        return unify(a->lhs, b->lhs);
      default:
        return unify(a->lhs, b->lhs) && unify(a->rhs, b->rhs);
    }
  }

  void expect_type(const TermPtr& at, const TypePtr& want, const TypePtr& got) {
    if (!unify(want, got)) mismatch(at, want, got);
  }

  // Annotation written in source: bind names against delta.
  TypePtr resolve(const TypePtr& ann) {
    std::map<std::string, TypePtr> lenient_metas;
    std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& t) -> TypePtr {
      switch (t->tag) {
        case TypeTag::Free: {
          if (t->id != 0) return t;
          for (auto it = delta_.rbegin(); it != delta_.rend(); ++it)
            if (it->first == t->name) return ty::free(t->name, it->second);
          if (!opts_.lenient) throw TypeError("unbound type variable '" + t->name + "'");
          auto [pos, fresh] = lenient_metas.emplace(t->name, nullptr);
          if (fresh) pos->second = fresh_meta();
          return pos->second;
        }
        case TypeTag::Prod:
          return ty::prod(go(t->lhs), go(t->rhs));
        case TypeTag::Sum:
          return ty::sum(go(t->lhs), go(t->rhs));
        case TypeTag::Arrow:
          return ty::arrow(go(t->lhs), go(t->rhs));
        case TypeTag::Mu:
          return ty::mu_raw(t->name, go(t->lhs));
        case TypeTag::All:
          return ty::all_raw(t->name, go(t->lhs));
        case TypeTag::Ex:
          return ty::ex_raw(t->name, go(t->lhs));
        default:
          return t;
      }
    };
    return go(ann);
  }

  std::string implicit_binder(const TermPtr& body) {
    std::string found;
    std::function<void(const TermPtr&)> scan = [&](const TermPtr& t) {
      if (!found.empty()) return;
      if (t->ann) {
        all_free_names(t->ann, [&](const std::string& n, uint64_t id) {
          if (!found.empty() || id != 0) return true;
          for (const auto& d : delta_)
            if (d.first == n) return true;
          found = n;
          return true;
        });
      }
      for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i)
        if (t->kids[i]->has_ann) scan(t->kids[i]);
    };
    scan(body);
    return found.empty() ? "t" : found;
  }

  uint64_t push_tyvar(const std::string& name) {
    uint64_t id = next_id_++;
    delta_.emplace_back(name, id);
    id_names_[id] = name;
    return id;
  }

  static std::string id_tag(uint64_t id) { return "#" + std::to_string(id); }

  Result finish(const TermPtr& at, TypePtr t, TermPtr term, const TypePtr& exp) {
    if (exp) expect_type(at, exp, t);
    return {std::move(t), std::move(term)};
  }

  TypePtr lookup_bvar(uint64_t n) {
    if (n >= gamma_.size()) throw TypeError("term is not closed");
    return gamma_[gamma_.size() - 1 - n];
  }

  Result go(const TermPtr& t, const TypePtr& exp) {
    TypePtr ex = exp ? head(exp) : nullptr;
    switch (t->tag) {
      case Tag::BVar:
        return finish(t, lookup_bvar(t->n), t, exp);
      case Tag::FVar: {
        auto it = opts_.free_vars.find(t->name);
        if (it == opts_.free_vars.end()) throw TypeError("unbound variable '" + t->name + "'");
        return finish(t, it->second, t, exp);
      }
      case Tag::Unit:
        return finish(t, ty::unit(), t, exp);
      case Tag::Num:
        return finish(t, ty::nat(), t, exp);
      case Tag::Loc:
        return finish(t, ty::ref_nat(), t, exp);
      case Tag::Hole:
        throw TypeError("a context hole cannot be typed");
      case Tag::Rand:
      case Tag::Pred:
      case Tag::Succ: {
        Result k = go(t->kids[0], ty::nat());
        return finish(t, ty::nat(), with_kids(t, k.term), exp);
      }
      case Tag::Ref: {
        Result k = go(t->kids[0], ty::nat());
        return finish(t, ty::ref_nat(), with_kids(t, k.term), exp);
      }
      case Tag::Deref: {
        Result k = go(t->kids[0], ty::ref_nat());
        return finish(t, ty::nat(), with_kids(t, k.term), exp);
      }
      case Tag::Assign: {
        Result a = go(t->kids[0], ty::ref_nat());
        Result b = go(t->kids[1], ty::nat());
        return finish(t, ty::unit(), with_kids(t, a.term, b.term), exp);
      }
      case Tag::Ifz: {
        Result c = go(t->kids[0], ty::nat());
        Result a = go(t->kids[1], exp);
        Result b = go(t->kids[2], exp ? exp : a.type);
        return finish(t, a.type, with_kids(t, c.term, a.term, b.term), exp);
      }
      case Tag::Pair: {
        bool known = ex && ex->tag == TypeTag::Prod;
        Result a = go(t->kids[0], known ? ex->lhs : nullptr);
        Result b = go(t->kids[1], known ? ex->rhs : nullptr);
        return finish(t, ty::prod(a.type, b.type), with_kids(t, a.term, b.term), exp);
      }
      case Tag::Proj: {
        Result k = go(t->kids[0], nullptr);
        TypePtr p = head(k.type);
        if (p->tag == TypeTag::Meta) {
          TypePtr pr = ty::prod(fresh_meta(), fresh_meta());
          expect_type(t->kids[0], pr, p);
          p = pr;
        }
        if (p->tag != TypeTag::Prod)
          throw TypeError("projection from non-product in " + show(t) + ": " + pretty_type(zonk(p)));
        return finish(t, t->n == 1 ? p->lhs : p->rhs, with_kids(t, k.term), exp);
      }
      case Tag::Inl:
      case Tag::Inr: {
        bool left = t->tag == Tag::Inl;
        if (ex && ex->tag == TypeTag::Sum) {
          Result k = go(t->kids[0], left ? ex->lhs : ex->rhs);
          return finish(t, ex, with_kids(t, k.term), exp);
        }
        Result k = go(t->kids[0], nullptr);
        TypePtr other = fresh_meta();
        TypePtr s = left ? ty::sum(k.type, other) : ty::sum(other, k.type);
        return finish(t, s, with_kids(t, k.term), exp);
      }
      case Tag::Match: {
        Result s = go(t->kids[0], nullptr);
        TypePtr st = head(s.type);
        if (st->tag == TypeTag::Meta) {
          TypePtr sm = ty::sum(fresh_meta(), fresh_meta());
          expect_type(t->kids[0], sm, st);
          st = sm;
        }
        if (st->tag != TypeTag::Sum)
          throw TypeError("match on non-sum in " + show(t) + ": " + pretty_type(zonk(st)));
        bind_var(st->lhs, t->name);
        Result a = go(t->kids[1], exp);
        unbind_var();
        bind_var(st->rhs, t->name2);
        Result b = go(t->kids[2], exp ? exp : a.type);
        unbind_var();
        return finish(t, a.type, with_kids(t, s.term, a.term, b.term), exp);
      }
      case Tag::Fun: {
        bool arrow = ex && ex->tag == TypeTag::Arrow;
        TypePtr dom;
        if (t->ann) {
          dom = resolve(t->ann);
          if (arrow) expect_type(t, ex->lhs, dom);
        } else {
          dom = arrow ? ex->lhs : fresh_meta();
        }
        bind_var(dom, t->name);
        Result b = go(t->kids[0], arrow ? ex->rhs : nullptr);
        unbind_var();
        TermPtr term = tm::fun_raw(t->name, dom, b.term);
        return finish(t, ty::arrow(dom, b.type), term, exp);
      }
      case Tag::App: {
        const TermPtr& f = t->kids[0];
        if (f->tag == Tag::Fun && !f->ann) {
          Result a = go(t->kids[1], nullptr);
          bind_var(a.type, f->name);
          Result b = go(f->kids[0], exp);
          unbind_var();
          TermPtr term = tm::app(tm::fun_raw(f->name, a.type, b.term), a.term);
          return finish(t, b.type, term, exp);
        }
        Result fr = go(f, nullptr);
        TypePtr ft = head(fr.type);
        if (ft->tag == TypeTag::Meta) {
          TypePtr ar = ty::arrow(fresh_meta(), fresh_meta());
          expect_type(f, ar, ft);
          ft = ar;
        }
        if (ft->tag != TypeTag::Arrow)
          throw TypeError("applying a non-function in " + show(t) + ": " + pretty_type(zonk(ft)));
        Result a = go(t->kids[1], ft->lhs);
        return finish(t, ft->rhs, tm::app(fr.term, a.term), exp);
      }
      case Tag::TFun: {
        std::string name = t->name2.empty() ? implicit_binder(t->kids[0]) : t->name2;
        uint64_t id = push_tyvar(name);
        TypePtr var = ty::free(name, id);
        TypePtr bexp = (ex && ex->tag == TypeTag::All) ? open_type(ex->lhs, var) : nullptr;
        Result b = go(t->kids[0], bexp);
        delta_.pop_back();
        TypePtr bt = zonk(b.type);
        TypePtr all = ty::all_raw(name, close_type(bt, name, id));
        return finish(t, all, tm::tfun(b.term, id_tag(id)), exp);
      }
      case Tag::TApp: {
        Result k = go(t->kids[0], nullptr);
        TypePtr ft = head(k.type);
        if (ft->tag != TypeTag::All)
          throw TypeError("type application of a non-polymorphic term in " + show(t) + ": " +
                          pretty_type(zonk(ft)));
        TypePtr inst = t->ann ? resolve(t->ann) : fresh_meta();
        return finish(t, open_type(ft->lhs, inst), tm::tapp(k.term, inst), exp);
      }
      case Tag::Pack: {
        TypePtr ext = t->ann ? resolve(t->ann) : ex;
        if (!ext) throw TypeError("missing annotation: pack needs its existential type in " + show(t));
        if (t->ann && ex) expect_type(t, ex, ext);
        ext = head(ext);
        if (ext->tag != TypeTag::Ex)
          throw TypeError("pack at non-existential type " + pretty_type(zonk(ext)) + " in " + show(t));
        TypePtr witness = fresh_meta();
        Result k = go(t->kids[0], open_type(ext->lhs, witness));
        return finish(t, ext, tm::pack(k.term, ext), exp);
      }
      case Tag::Unpack: {
        Result s = go(t->kids[0], nullptr);
        TypePtr st = head(s.type);
        if (st->tag != TypeTag::Ex)
          throw TypeError("unpack of non-existential in " + show(t) + ": " + pretty_type(zonk(st)));
        std::string name = t->name2.empty() ? implicit_binder(t->kids[1]) : t->name2;
        uint64_t id = push_tyvar(name);
        bind_var(open_type(st->lhs, ty::free(name, id)), t->name);
        Result b = go(t->kids[1], exp);
        unbind_var();
        delta_.pop_back();
        TypePtr bt = zonk(b.type);
        bool escapes = !all_free_names(bt, [&](const std::string&, uint64_t fid) { return fid != id; });
        if (escapes) throw TypeError("abstract type escapes its unpack in " + show(t) + ": " + pretty_type(bt));
        return finish(t, bt, tm::unpack_raw(s.term, id_tag(id), t->name, b.term), exp);
      }
      case Tag::Fold: {
        TypePtr mu = t->ann ? resolve(t->ann) : ex;
        if (!mu) throw TypeError("missing annotation: fold needs a mu type in " + show(t));
        if (t->ann && ex) expect_type(t, ex, mu);
        mu = head(mu);
        if (mu->tag != TypeTag::Mu) throw TypeError("fold at non-recursive type " + pretty_type(zonk(mu)));
        Result k = go(t->kids[0], open_type(mu->lhs, mu));
        return finish(t, mu, tm::fold(k.term, mu), exp);
      }
      case Tag::Unfold: {
        Result k = go(t->kids[0], nullptr);
        TypePtr mu = head(k.type);
        if (mu->tag != TypeTag::Mu)
          throw TypeError("unfold of non-recursive type in " + show(t) + ": " + pretty_type(zonk(mu)));
        return finish(t, open_type(mu->lhs, mu), with_kids(t, k.term), exp);
      }
    }
    throw TypeError("unknown term");
  }

  // Replace checker-internal type variable identities by unique names and
  // default leftover metas.
  TypePtr display_type(const TypePtr& t) {
    TypePtr z = default_metas(t);
    std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& x) -> TypePtr {
      switch (x->tag) {
        case TypeTag::Free: {
          auto it = display_.find(x->id);
          return it == display_.end() ? x : ty::free(it->second);
        }
        case TypeTag::Prod:
          return ty::prod(go(x->lhs), go(x->rhs));
        case TypeTag::Sum:
          return ty::sum(go(x->lhs), go(x->rhs));
        case TypeTag::Arrow:
          return ty::arrow(go(x->lhs), go(x->rhs));
        case TypeTag::Mu:
          return ty::mu_raw(x->name, go(x->lhs));
        case TypeTag::All:
          return ty::all_raw(x->name, go(x->lhs));
        case TypeTag::Ex:
          return ty::ex_raw(x->name, go(x->lhs));
        default:
          return x;
      }
    };
    return go(z);
  }

  TermPtr fin(const TermPtr& t, std::vector<std::string>& scope) {
    bool binds = (t->tag == Tag::TFun || t->tag == Tag::Unpack) && !t->name2.empty() && t->name2[0] == '#';
    std::string display;
    if (binds) {
      uint64_t id = std::stoull(t->name2.substr(1));
      std::string base = id_names_[id];
      display = base;
      for (int i = 1; std::find(scope.begin(), scope.end(), display) != scope.end(); ++i)
        display = base + std::to_string(i);
      display_[id] = display;
    }
    std::array<TermPtr, 3> ks{};
    for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i) {
      bool inner = binds && !(t->tag == Tag::Unpack && i == 0);
      if (inner) scope.push_back(display);
      ks[i] = fin(t->kids[i], scope);
      if (inner) scope.pop_back();
    }
    TermPtr out = num_kids(t->tag) ? with_kids(t, ks[0], ks[1], ks[2]) : t;
    if (t->ann) out = with_ann(out, display_type(t->ann));
    if (binds) {
      if (t->tag == Tag::TFun) return tm::tfun(out->kids[0], display);
      return tm::unpack_raw(out->kids[0], display, out->name, out->kids[1]);
    }
    return out;
  }
};

}  // namespace

bool check_type(const std::vector<std::string>& delta, const TypePtr& t) {
  return all_free_names(t, [&](const std::string& n, uint64_t) {
    return std::find(delta.begin(), delta.end(), n) != delta.end();
  });
}

TypePtr typecheck(const TermPtr& e, const TypePtr& expected, const CheckOptions& opts) {
  Checker c(opts);
  return c.run(e, expected).type;
}

Elaboration elaborate(const TermPtr& e, const TypePtr& expected, const CheckOptions& opts) {
  Checker c(opts);
  Result r = c.run(e, expected);
  return {r.type, c.finalize(r.term)};
}

}  // namespace fmu
