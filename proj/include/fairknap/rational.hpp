#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <string_view>

namespace fairknap {

// Every quantity in this library (values, sizes, budgets, densities,
// fractions) is an exact rational. cpp_rational keeps values canonical:
// lowest terms, positive denominator. There is no floating point anywhere;
// all comparisons and verdicts are exact.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p" or "p/q" with q a positive integer. Throws
/// std::invalid_argument on anything else (including "1/0").
Rational parse_rational(std::string_view text);

/// Inverse of parse_rational: "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& r);

bool is_integral(const Rational& r);

Integer floor_div(const Integer& a, const Integer& b);  // requires b > 0
Integer rational_floor(const Rational& r);
Integer rational_ceil(const Rational& r);

/// lcm of the denominators of a range of rationals; 1 for an empty range.
Integer denominator_lcm(std::span<const Rational> values);

}  // namespace fairknap
