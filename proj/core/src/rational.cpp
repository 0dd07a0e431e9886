#include "selfsim/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace selfsim {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned k = 0; k < e; ++k) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    exponent = std::strtol(std::string(exp_part).c_str(), nullptr, 10);
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) ||
      (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");

  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer mantissa(digits.empty() ? std::string("0") : digits);
  exponent -= static_cast<long>(frac_part.size());

  Rational value(mantissa);
  if (exponent > 0)
    value *= Rational(pow10(static_cast<unsigned>(exponent)));
  else if (exponent < 0)
    value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  Integer v{std::string(s)};
  return negative ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), text);
    Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(s);
}

std::string to_string(const Rational& value) { return value.str(); }

std::string to_decimal_string(const Real& value, int digits) {
  return value.str(digits, std::ios_base::scientific);
}

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

Rational to_rational(const Real& value) {
  if (!boost::multiprecision::isfinite(value))
    throw std::domain_error("cannot convert a non-finite value to Rational");
  if (value == 0) return Rational(0);
  int exp2 = 0;
  Real mantissa = boost::multiprecision::frexp(value, &exp2);
  // Scale the mantissa to an integer; 50 decimal digits fit in 200 bits.
  constexpr int kBits = 200;
  Real scaled = boost::multiprecision::ldexp(mantissa, kBits);
  const Real truncated = boost::multiprecision::trunc(scaled);
  const Integer m = static_cast<Integer>(truncated);
  Rational r(m);
  const int shift = exp2 - kBits;
  Integer two_pow = 1;
  two_pow <<= static_cast<unsigned>(shift >= 0 ? shift : -shift);
  if (shift >= 0)
    r *= Rational(two_pow);
  else
    r /= Rational(two_pow);
  return r;
}

}  // namespace selfsim
