#include "fmu/pretty.hpp"

#include <set>
#include <sstream>
#include <vector>

#include "lexer.hpp"

namespace fmu {
namespace {

enum Level { SEQ = 0, ASSIGN, CHOICE, PREFIX, APP, POSTFIX, ATOM };

bool uses_index(const TermPtr& t, uint64_t d) {
  if (t->loose <= d) return false;
  if (t->tag == Tag::BVar) return t->n == d;
  for (size_t i = 0, nk = num_kids(t->tag); i < nk; ++i)
    if (uses_index(t->kids[i], d + (binds_term_var(t->tag, i) ? 1 : 0))) return true;
  return false;
}

bool is_choice(const TermPtr& t) {
  return t->tag == Tag::Ifz && t->kids[0]->tag == Tag::Rand && t->kids[0]->kids[0]->tag == Tag::Num &&
         t->kids[0]->kids[0]->n == 2;
}
bool is_let(const TermPtr& t) { return t->tag == Tag::App && t->kids[0]->tag == Tag::Fun && !t->kids[0]->ann; }
bool is_seq(const TermPtr& t) {
  if (!is_let(t)) return false;
  const TermPtr& f = t->kids[0];
  return (f->name.empty() || f->name == "_") && !uses_index(f->kids[0], 0);
}

Level level_of(const TermPtr& t) {
  if (is_seq(t)) return SEQ;
  if (is_let(t)) return PREFIX;
  if (is_choice(t)) return CHOICE;
  switch (t->tag) {
    case Tag::Assign:
      return ASSIGN;
    case Tag::App:
      return APP;
    case Tag::TApp:
      return POSTFIX;
    case Tag::BVar:
    case Tag::FVar:
    case Tag::Unit:
    case Tag::Num:
    case Tag::Pair:
    case Tag::Loc:
    case Tag::Hole:
      return ATOM;
    default:
      return PREFIX;
  }
}

bool open_right(const TermPtr& t) {
  if (is_seq(t) || is_choice(t)) return false;
  if (is_let(t)) return true;
  switch (t->tag) {
    case Tag::Fun:
    case Tag::TFun:
    case Tag::Ifz:
    case Tag::Match:
    case Tag::Unpack:
      return true;
    default:
      return false;
  }
}

class Printer {
 public:
  explicit Printer(const TermPtr& root) {
    for (const auto& v : free_vars(root)) avoid_.insert(v);
  }

  void print(const TermPtr& t, int prec, bool tail) {
    bool paren = level_of(t) < prec || (tail && open_right(t));
    if (paren) {
      os_ << "(";
      tail = false;
    }
    body(t, tail);
    if (paren) os_ << ")";
  }

  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  std::vector<std::string> env_;
  std::set<std::string> avoid_;

  std::string fresh(const std::string& hint, const TermPtr& body) {
    std::string base = hint.empty() ? "x" : hint;
    if (base == "_") {
      if (!uses_index(body, 0)) return "_";
      base = "x";
    }
    auto taken = [&](const std::string& n) {
      if (avoid_.count(n) || detail::is_keyword(n)) return true;
      for (const auto& e : env_)
        if (e == n) return true;
      return false;
    };
    std::string name = base;
    for (int i = 1; taken(name); ++i) name = base + std::to_string(i);
    return name;
  }

  void under(const std::string& name, const TermPtr& t, int prec, bool tail) {
    env_.push_back(name);
    print(t, prec, tail);
    env_.pop_back();
  }

  void body(const TermPtr& t, bool tail) {
    if (is_seq(t)) {
      print(t->kids[1], SEQ, true);
      os_ << "; ";
      under("_", t->kids[0]->kids[0], ASSIGN, tail);
      return;
    }
    if (is_let(t)) {
      const TermPtr& f = t->kids[0];
      std::string x = fresh(f->name, f->kids[0]);
      os_ << "let " << x << " = ";
      print(t->kids[1], SEQ, false);
      os_ << " in ";
      under(x, f->kids[0], SEQ, tail);
      return;
    }
    if (is_choice(t)) {
      print(t->kids[1], CHOICE, true);
      os_ << " (+) ";
      print(t->kids[2], PREFIX, tail);
      return;
    }
    switch (t->tag) {
      case Tag::BVar:
        if (t->n < env_.size())
          os_ << env_[env_.size() - 1 - t->n];
        else
          os_ << "^" << t->n;
        return;
      case Tag::FVar:
        os_ << t->name;
        return;
      case Tag::Unit:
        os_ << "()";
        return;
      case Tag::Num:
        os_ << t->n;
        return;
      case Tag::Loc:
        os_ << "<l" << t->n << ">";
        return;
      case Tag::Hole:
        os_ << "[.]";
        return;
      case Tag::Rand:
        prefix("rand ", t);
        return;
      case Tag::Succ:
        prefix("succ ", t);
        return;
      case Tag::Pred:
        prefix("pred ", t);
        return;
      case Tag::Proj:
        prefix(t->n == 1 ? "fst " : "snd ", t);
        return;
      case Tag::Inl:
        prefix("inl ", t);
        return;
      case Tag::Inr:
        prefix("inr ", t);
        return;
      case Tag::Ref:
        prefix("ref ", t);
        return;
      case Tag::Unfold:
        prefix("unfold ", t);
        return;
      case Tag::Deref:
        prefix("!", t);
        return;
      case Tag::Fold:
        prefix("fold ", t);
        if (t->ann) os_ << " at " << pretty_type(t->ann);
        return;
      case Tag::Pack:
        prefix("pack ", t);
        if (t->ann) os_ << " as " << pretty_type(t->ann);
        return;
      case Tag::Pair:
        os_ << "(";
        print(t->kids[0], SEQ, false);
        os_ << ", ";
        print(t->kids[1], SEQ, false);
        os_ << ")";
        return;
      case Tag::App:
        print(t->kids[0], APP, true);
        os_ << " ";
        print(t->kids[1], POSTFIX, tail);
        return;
      case Tag::TApp:
        print(t->kids[0], POSTFIX, true);
        os_ << "[" << (t->ann ? pretty_type(t->ann) : "") << "]";
        return;
      case Tag::Assign:
        print(t->kids[0], CHOICE, true);
        os_ << " := ";
        print(t->kids[1], CHOICE, tail);
        return;
      case Tag::Ifz:
        os_ << "ifz ";
        print(t->kids[0], SEQ, false);
        os_ << " then ";
        print(t->kids[1], SEQ, false);
        os_ << " else ";
        print(t->kids[2], SEQ, tail);
        return;
      case Tag::Fun: {
        std::string x = fresh(t->name, t->kids[0]);
        os_ << "fn ";
        if (t->ann)
          os_ << "(" << x << " : " << pretty_type(t->ann) << ")";
        else
          os_ << x;
        os_ << " => ";
        under(x, t->kids[0], SEQ, tail);
        return;
      }
      case Tag::TFun:
        os_ << "tfn ";
        if (!t->name2.empty()) os_ << t->name2 << ". ";
        print(t->kids[0], SEQ, tail);
        return;
      case Tag::Match: {
        os_ << "match ";
        print(t->kids[0], SEQ, false);
        std::string x1 = fresh(t->name, t->kids[1]);
        os_ << " with inl " << x1 << " => ";
        under(x1, t->kids[1], SEQ, false);
        std::string x2 = fresh(t->name2, t->kids[2]);
        os_ << " | inr " << x2 << " => ";
        under(x2, t->kids[2], SEQ, tail);
        return;
      }
      case Tag::Unpack: {
        os_ << "unpack ";
        print(t->kids[0], SEQ, false);
        os_ << " as ";
        if (!t->name2.empty()) os_ << t->name2 << ". ";
        std::string x = fresh(t->name, t->kids[1]);
        os_ << x << " in ";
        under(x, t->kids[1], SEQ, tail);
        return;
      }
    }
  }

  void prefix(const char* kw, const TermPtr& t) {
    os_ << kw;
    print(t->kids[0], APP, false);
  }
};

}  // namespace

std::string pretty(const TermPtr& t) {
  Printer p(t);
  p.print(t, SEQ, false);
  return p.str();
}

}  // namespace fmu
