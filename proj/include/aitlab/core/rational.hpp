#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace aitlab {

// Exact arbitrary-precision arithmetic. Expression templates are disabled so
// the types behave as plain values (and as Eigen scalars).
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// 2^exponent, for positive or negative exponents.
Rational pow2(long exponent);

/// "num/den" with the sign on the numerator; integers keep the "/1".
std::string to_string(const Rational& value);

/// Accepts "num/den", "num" and "-num/den". Throws InputError otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace aitlab
