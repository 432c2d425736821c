#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace scode {

// Probabilities and average lengths are exact arbitrary-precision rationals.
// Floating point enters only when a logarithm is taken.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 50 decimal digits, used to settle bound comparisons whose float margin
// is below tolerance.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// Parse "num/den" or "num". Rejects anything else (floats, exponents,
/// whitespace) so that exactness cannot be silently lost.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rational& value);

BigInt pow_uint(const BigInt& base, unsigned exp);

/// lg of a positive big integer, accurate to ~1e-14 even when the value
/// does not fit in a double.
double log2_bigint(const BigInt& value);

/// lg(num/den) as log2(num) - log2(den); safe for huge extension products.
double log2_rational(const Rational& value);

double to_double(const Rational& value);

BigFloat to_bigfloat(const Rational& value);

/// lg(num/den) at 50 decimal digits.
BigFloat log2_rational_hp(const Rational& value);

} // namespace scode
