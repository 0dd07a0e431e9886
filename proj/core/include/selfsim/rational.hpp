#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace selfsim {

/// Arbitrary-precision integer.
using Integer = boost::multiprecision::mpz_int;

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = boost::multiprecision::mpq_rational;

/// 50 significant decimal digits; used for every floating evaluation.
using Real = boost::multiprecision::mpfr_float_50;

/// Parses "n", "n/d", or a decimal literal such as "-1.25" or "2.5e-3".
/// Decimal input is converted exactly (0.1 becomes 1/10).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "n/d", or "n" when the denominator is 1.
std::string to_string(const Rational& value);

/// Scientific notation with `digits` significant digits.
std::string to_decimal_string(const Real& value, int digits = 17);

bool is_integer(const Rational& value);

inline Real to_real(const Rational& value) { return Real(value); }

/// Exact rational value of a finite Real (every binary float is a dyadic rational).
Rational to_rational(const Real& value);

}  // namespace selfsim
