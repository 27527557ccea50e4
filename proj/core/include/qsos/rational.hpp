#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qsos {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or a plain decimal such as "-1.25" into a canonical rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact conversion: every finite double is a dyadic rational.
Rational exact_rational(double value);

}  // namespace qsos
