#pragma once

#include <string>
#include <vector>

namespace fmu::detail {

enum class Tok { Ident, Number, Keyword, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& source);
bool is_keyword(const std::string& word);

}  // namespace fmu::detail
