#include "fairknap/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fairknap {

namespace {

Integer parse_integer(std::string_view part, bool allow_sign, std::string_view whole,
                      const char* what) {
  auto fail = [&](const char* why) -> Integer {
    throw std::invalid_argument("invalid rational \"" + std::string(whole) + "\": " +
                                std::string(what) + " " + why);
  };
  bool negative = false;
  std::size_t i = 0;
  if (allow_sign && !part.empty() && (part[0] == '+' || part[0] == '-')) {
    negative = part[0] == '-';
    i = 1;
  }
  if (i == part.size()) return fail("has no digits");
  for (std::size_t j = i; j < part.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(part[j]))) return fail("is not an integer");
  }
  Integer magnitude(std::string(part.substr(i)));
  return negative ? Integer(-magnitude) : magnitude;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("invalid rational: empty string");
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, true, text, "numerator"));
  }
  Integer num = parse_integer(text.substr(0, slash), true, text, "numerator");
  Integer den = parse_integer(text.substr(slash + 1), false, text, "denominator");
  if (den == 0) {
    throw std::invalid_argument("invalid rational \"" + std::string(text) +
                                "\": zero denominator");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

bool is_integral(const Rational& r) { return denominator(r) == 1; }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if (a % b != 0 && a < 0) --q;
  return q;
}

Integer rational_floor(const Rational& r) { return floor_div(numerator(r), denominator(r)); }

Integer rational_ceil(const Rational& r) { return -rational_floor(Rational(-r)); }

Integer denominator_lcm(std::span<const Rational> values) {
  Integer acc = 1;
  for (const Rational& v : values) acc = lcm(acc, denominator(v));
  return acc;
}

}  // namespace fairknap
