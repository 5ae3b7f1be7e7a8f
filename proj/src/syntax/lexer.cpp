#include "lexer.hpp"

#include <cctype>
#include <set>

#include "fmu/parser.hpp"

namespace fmu::detail {

bool is_keyword(const std::string& w) {
  static const std::set<std::string> kws = {
      "fn",   "tfn",  "fold", "unfold", "pack", "unpack", "inl", "inr", "match", "with", "ifz",  "then", "else",
      "rand", "succ", "pred", "ref",    "let",  "in",     "as",  "at",  "fst",   "snd",  "unit", "nat",  "mu",
      "all",  "ex"};
  return kws.count(w) > 0;
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Symbol, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      t.text = src.substr(i, j - i);
      t.kind = is_keyword(t.text) ? Tok::Keyword : Tok::Ident;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else {
      static const char* multi[] = {"(+)", "=>", "->", ":="};
      bool matched = false;
      for (const char* m : multi) {
        std::string s(m);
        if (src.compare(i, s.size(), s) == 0) {
          t.text = s;
          advance(s.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string("(),:.*+|[]!;=").find(c) == std::string::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

}  // namespace fmu::detail
