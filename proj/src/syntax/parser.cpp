#include "fmu/parser.hpp"

#include <limits>

#include "lexer.hpp"

namespace fmu {
namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  Parser(const std::string& src, bool allow_hole) : toks_(detail::lex(src)), allow_hole_(allow_hole) {}

  TermPtr whole_term() {
    TermPtr t = term();
    expect_end();
    return t;
  }
  TypePtr whole_type() {
    TypePtr t = type();
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  bool allow_hole_;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is(const char* text, size_t k = 0) const {
    const Token& t = peek(k);
    return (t.kind == Tok::Symbol || t.kind == Tok::Keyword) && t.text == text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " near " + near, t.line, t.col);
  }
  void expect(const char* text) {
    if (!is(text)) fail(std::string("expected '") + text + "'");
    ++pos_;
  }
  bool accept(const char* text) {
    if (!is(text)) return false;
    ++pos_;
    return true;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected trailing input");
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return toks_[pos_++].text;
  }

  // ----- types -----

  TypePtr type() {
    for (const char* b : {"mu", "all", "ex"}) {
      if (accept(b)) {
        std::string a = ident();
        expect(".");
        TypePtr body = type();
        std::string kw(b);
        return kw == "mu" ? ty::mu(a, body) : kw == "all" ? ty::all(a, body) : ty::ex(a, body);
      }
    }
    TypePtr lhs = sum_type();
    if (accept("->")) return ty::arrow(lhs, type());
    return lhs;
  }
  TypePtr sum_type() {
    TypePtr lhs = prod_type();
    if (accept("+")) return ty::sum(lhs, sum_type());
    return lhs;
  }
  TypePtr prod_type() {
    TypePtr lhs = atom_type();
    if (accept("*")) return ty::prod(lhs, prod_type());
    return lhs;
  }
  TypePtr atom_type() {
    if (accept("unit")) return ty::unit();
    if (accept("nat")) return ty::nat();
    if (accept("ref")) {
      expect("nat");
      return ty::ref_nat();
    }
    if (accept("(")) {
      TypePtr t = type();
      expect(")");
      return t;
    }
    if (peek().kind == Tok::Ident) return ty::free(ident());
    fail("expected a type");
  }

  // ----- terms -----

  TermPtr term() {
    TermPtr lhs = assign_level();
    while (accept(";")) lhs = tm::seq(lhs, assign_level());
    return lhs;
  }
  TermPtr assign_level() {
    TermPtr lhs = choice_level();
    if (accept(":=")) return tm::assign(lhs, choice_level());
    return lhs;
  }
  TermPtr choice_level() {
    TermPtr lhs = prefix_level();
    while (accept("(+)")) lhs = tm::choice(lhs, prefix_level());
    return lhs;
  }

  TermPtr prefix_level() {
    if (accept("fn")) return fn_rest();
    if (accept("tfn")) {
      std::string binder;
      if (peek().kind == Tok::Ident && is(".", 1)) {
        binder = ident();
        expect(".");
      }
      return tm::tfun(term(), binder);
    }
    if (accept("let")) {
      std::string x = ident();
      expect("=");
      TermPtr bound = term();
      expect("in");
      return tm::let(x, bound, term());
    }
    if (accept("ifz")) {
      TermPtr c = term();
      expect("then");
      TermPtr a = term();
      expect("else");
      return tm::ifz(c, a, term());
    }
    if (accept("match")) {
      TermPtr s = term();
      expect("with");
      expect("inl");
      std::string x1 = ident();
      expect("=>");
      TermPtr b1 = term();
      expect("|");
      expect("inr");
      std::string x2 = ident();
      expect("=>");
      return tm::match(s, x1, b1, x2, term());
    }
    if (accept("unpack")) {
      TermPtr s = term();
      expect("as");
      std::string binder;
      if (peek().kind == Tok::Ident && is(".", 1)) {
        binder = ident();
        expect(".");
      }
      std::string x = ident();
      expect("in");
      return tm::unpack(s, x, term(), binder);
    }
    if (accept("rand")) return tm::rand(prefix_level());
    if (accept("succ")) return tm::succ(prefix_level());
    if (accept("pred")) return tm::pred(prefix_level());
    if (accept("fst")) return tm::proj(1, prefix_level());
    if (accept("snd")) return tm::proj(2, prefix_level());
    if (accept("inl")) return tm::inl(prefix_level());
    if (accept("inr")) return tm::inr(prefix_level());
    if (accept("ref")) return tm::ref(prefix_level());
    if (accept("unfold")) return tm::unfold(prefix_level());
    if (accept("!")) return tm::deref(prefix_level());
    if (accept("fold")) {
      TermPtr e = prefix_level();
      TypePtr ann = accept("at") ? type() : nullptr;
      return tm::fold(e, ann);
    }
    if (accept("pack")) {
      TermPtr e = prefix_level();
      TypePtr ann = accept("as") ? type() : nullptr;
      return tm::pack(e, ann);
    }
    return app_level();
  }

  TermPtr fn_rest() {
    std::string x;
    TypePtr ann;
    if (accept("(")) {
      x = ident();
      if (accept(":")) ann = type();
      expect(")");
    } else {
      x = ident();
    }
    expect("=>");
    return tm::lam(x, ann, term());
  }

  bool hole_ahead() const { return allow_hole_ && is("[") && is(".", 1) && is("]", 2); }

  bool atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident || t.kind == Tok::Number) return true;
    if (is("(")) return true;
    return hole_ahead();
  }

  TermPtr app_level() {
    TermPtr f = postfix_level();
    while (atom_start()) f = tm::app(f, postfix_level());
    return f;
  }

  TermPtr postfix_level() {
    TermPtr e = atom();
    while (is("[") && !hole_ahead()) {
      ++pos_;
      TypePtr ann = is("]") ? nullptr : type();
      expect("]");
      e = tm::tapp(e, ann);
    }
    return e;
  }

  TermPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) return tm::var(ident());
    if (t.kind == Tok::Number) {
      const std::string& digits = t.text;
      if (digits.find_first_not_of('0') == std::string::npos) fail("numerals start at 1");
      if (digits.size() > 18) fail("numeral too large");
      ++pos_;
      return tm::num(std::stoull(digits));
    }
    if (hole_ahead()) {
      pos_ += 3;
      return tm::hole();
    }
    if (accept("(")) {
      if (accept(")")) return tm::unit();
      TermPtr a = term();
      if (accept(",")) {
        TermPtr b = term();
        expect(")");
        return tm::pair(a, b);
      }
      expect(")");
      return a;
    }
    fail("expected a term");
  }
};

}  // namespace

TermPtr parse_term(const std::string& source, bool allow_hole) { return Parser(source, allow_hole).whole_term(); }
TypePtr parse_type(const std::string& source) { return Parser(source, false).whole_type(); }

}  // namespace fmu
