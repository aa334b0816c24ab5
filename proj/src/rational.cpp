#include "pencils/rational.hpp"

#include <stdexcept>

namespace pencils {

namespace {

// Strict decimal integer: optional sign, at least one digit, nothing else.
// mpz_set_str silently skips whitespace, so validate before handing over.
bool is_integer_literal(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') return false;
  return true;
}

mpz_class parse_integer(const std::string& text) {
  if (!is_integer_literal(text))
    throw std::invalid_argument("bad integer literal: \"" + text + "\"");
  // mpz_set_str rejects a leading '+'.
  return mpz_class(text[0] == '+' ? text.substr(1) : text, 10);
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_integer(text));
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: \"" + text + "\"");
  Rat value(num, den);
  value.canonicalize();
  return value;
}

Rat rat_from_parts(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat value{mpz_class(num), mpz_class(den)};
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace pencils
