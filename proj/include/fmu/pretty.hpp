#pragma once

#include <string>

#include "fmu/term.hpp"

namespace fmu {

// Concrete syntax that parse_term reads back to an alpha-equal term.
// `let`, `;` and `(+)` are re-sugared; locations print as `<lN>`, which
// does not parse.
std::string pretty(const TermPtr& t);

}  // namespace fmu
