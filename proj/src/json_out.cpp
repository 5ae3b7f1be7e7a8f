#include "fmu/json_out.hpp"

#include <stdexcept>

namespace fmu {

std::string to_decimal(const Rational& r, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = r.get_num() * scale;
  mpz_class q = num / r.get_den();
  mpz_class rem = num % r.get_den();
  if (2 * abs(rem) >= r.get_den()) q += (num < 0 ? -1 : 1);
  bool neg = q < 0;
  std::string s = mpz_class(abs(q)).get_str();
  if (s.size() <= static_cast<size_t>(digits)) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<size_t>(digits), ".");
  return neg ? "-" + s : s;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Bounds& b) {
  Json j;
  j["lower"] = to_string(b.lower);
  j["upper"] = to_string(b.upper);
  j["exact"] = b.exact;
  j["nodes"] = b.nodes;
  return j;
}

Json to_json(const Distribution& d) {
  Json arr = Json::array();
  for (const auto& [value, p] : d.sorted()) arr.push_back(Json{{"value", value}, {"prob", to_string(p)}});
  return arr;
}

std::string emit_json(const std::string& command, const Json& input, const Json& result) {
  Json doc;
  doc["command"] = command;
  doc["input"] = input;
  doc["result"] = result;
  return doc.dump();
}

}  // namespace fmu
