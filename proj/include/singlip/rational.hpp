// Exact rationals. Printed as reduced `a/b`, or `a` when integral.
#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "singlip/error.hpp"

namespace singlip {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline std::int64_t parse_integer(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    fail(ErrorKind::syntax, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

/// Accepts `a`, `-a`, `a/b`.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  std::int64_t num = parse_integer(text.substr(0, slash));
  std::int64_t den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::syntax, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Mediant of two fractions kept in unreduced form (numerator, denominator).
struct FractionPair {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational value() const { return Rational(num, den); }
  friend bool operator==(const FractionPair&, const FractionPair&) = default;
};

inline FractionPair mediant(FractionPair a, FractionPair b) {
  return {a.num + b.num, a.den + b.den};
}

}  // namespace singlip
