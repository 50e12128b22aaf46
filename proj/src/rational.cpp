#include "psum/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace psum {

Rational rational_from_string(const std::string& text) {
  std::string trimmed;
  trimmed.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  }
  if (trimmed.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  for (char c : trimmed) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '/') {
      throw std::invalid_argument("invalid character in rational literal '" + text + "'");
    }
  }
  Rational value;
  if (mpq_set_str(value.get_mpq_t(), trimmed.c_str(), 10) != 0) {
    throw std::invalid_argument("cannot parse '" + text + "' as p/q");
  }
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string to_fraction_string(const Rational& value) {
  return value.get_str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value has no rational representation");
  }
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

}  // namespace psum
