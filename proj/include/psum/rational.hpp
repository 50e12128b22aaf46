#pragma once

#include <gmpxx.h>

#include <string>

namespace psum {

using Rational = mpq_class;
using Integer = mpz_class;

// Arithmetic regime for validation and serialization. Exact is the
// canonical backend; Float relaxes the normalization check to an
// absolute tolerance and switches file output to decimal numbers.
enum class Backend { Exact, Float };

// Parses "p", "-p" or "p/q" in base 10. The denominator must be nonzero.
// Throws std::invalid_argument on anything else.
Rational rational_from_string(const std::string& text);

// Canonical fraction form: "p/q", or plain "p" when the denominator is 1.
std::string to_fraction_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

}  // namespace psum
