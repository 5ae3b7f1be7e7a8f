#pragma once

#include <gmpxx.h>

#include <string>

namespace fmu {

// Exact probabilities and weights. Always canonical (lowest terms).
using Rational = mpq_class;

inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "num/den", denominator always printed ("1/1", "0/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

// Decimal expansion with a fixed number of digits, for display only.
std::string to_decimal(const Rational& r, int digits = 12);

// Parses "a/b" or "a".
Rational parse_rational(const std::string& text);

}  // namespace fmu
