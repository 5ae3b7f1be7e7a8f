#pragma once

#include <stdexcept>
#include <string>

#include "fmu/term.hpp"
#include "fmu/type.hpp"

namespace fmu {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
};

// Whole-input parsers. Free identifiers become FVar / Free(name) nodes.
// `allow_hole` accepts `[.]` so that contexts can be written down.
TermPtr parse_term(const std::string& source, bool allow_hole = false);
TypePtr parse_type(const std::string& source);

}  // namespace fmu
