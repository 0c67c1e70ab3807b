// Puiseux branches y = sum c_e x^e with exact rational exponents and
// coefficients: contact exponents, characteristic exponents, essential
// integer exponents and the blow-up exponent shift.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "singlip/error.hpp"
#include "singlip/rational.hpp"

namespace singlip {

struct PuiseuxTerm {
  Rational exponent;
  Rational coefficient;

  friend bool operator==(const PuiseuxTerm&, const PuiseuxTerm&) = default;
};

/// A branch y = alpha(x^{1/m}). Exponents are positive and strictly
/// increasing, coefficients nonzero; m is the lcm of the exponent
/// denominators. No terms at all is the x-axis y = 0.
class PuiseuxBranch {
 public:
  explicit PuiseuxBranch(std::vector<PuiseuxTerm> terms) : terms_(std::move(terms)) {
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (terms_[k].exponent <= Rational(0)) fail(ErrorKind::invalid_value, "exponents must be positive");
      if (terms_[k].coefficient == Rational(0)) fail(ErrorKind::invalid_value, "coefficients must be nonzero");
      if (k > 0 && terms_[k].exponent <= terms_[k - 1].exponent)
        fail(ErrorKind::invalid_value, "exponents must be strictly increasing");
      multiplicity_ = std::lcm(multiplicity_, terms_[k].exponent.denominator());
    }
  }

  std::span<const PuiseuxTerm> terms() const { return terms_; }
  std::int64_t multiplicity() const { return multiplicity_; }
  bool is_axis() const { return terms_.empty(); }
  Rational first_exponent() const {
    if (terms_.empty()) fail(ErrorKind::invalid_value, "the x-axis has no first exponent");
    return terms_.front().exponent;
  }

  /// Coefficient at `e`, zero when absent.
  Rational coefficient(const Rational& e) const {
    for (const auto& t : terms_)
      if (t.exponent == e) return t.coefficient;
    return Rational(0);
  }

  PuiseuxBranch with_term(const Rational& e, const Rational& c) const {
    auto terms = terms_;
    auto it = std::find_if(terms.begin(), terms.end(), [&](const PuiseuxTerm& t) { return t.exponent >= e; });
    if (it != terms.end() && it->exponent == e) {
      it->coefficient += c;
      if (it->coefficient == Rational(0)) terms.erase(it);
    } else {
      terms.insert(it, PuiseuxTerm{e, c});
    }
    return PuiseuxBranch(std::move(terms));
  }

  PuiseuxBranch shifted(const Rational& delta) const {
    auto terms = terms_;
    for (auto& t : terms) t.exponent += delta;
    return PuiseuxBranch(std::move(terms));
  }

  friend bool operator==(const PuiseuxBranch&, const PuiseuxBranch&) = default;

 private:
  std::vector<PuiseuxTerm> terms_;
  std::int64_t multiplicity_ = 1;
};

namespace detail {

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) {
  std::int64_t fl = q.numerator() / q.denominator();
  if (q.numerator() < 0 && q.numerator() % q.denominator() != 0) --fl;
  return q - Rational(fl);
}

/// ord_x(alpha_i - beta_j) for the conjugates obtained by x^{1/m} -> w^i x^{1/m}.
/// The conjugate multiplies the coefficient at e by exp(2 pi i * (i e)); two
/// rational coefficients cancel only when the phases agree (equal
/// coefficients) or differ by one half (opposite coefficients).
inline std::optional<Rational> conjugate_difference_order(const PuiseuxBranch& a, std::int64_t i,
                                                          const PuiseuxBranch& b, std::int64_t j) {
  std::set<Rational> exponents;
  for (const auto& t : a.terms()) exponents.insert(t.exponent);
  for (const auto& t : b.terms()) exponents.insert(t.exponent);
  for (const auto& e : exponents) {
    Rational ca = a.coefficient(e);
    Rational cb = b.coefficient(e);
    if (ca == Rational(0) || cb == Rational(0)) return e;
    Rational phase = frac(Rational(i) * e - Rational(j) * e);
    bool cancels = (phase == Rational(0) && ca == cb) || (phase == Rational(1, 2) && ca == -cb);
    if (!cancels) return e;
  }
  return std::nullopt;
}

}  // namespace detail

/// Max over conjugate pairs of ord_x of the difference.
inline Rational contact_exponent(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  std::optional<Rational> best;
  for (std::int64_t i = 0; i < a.multiplicity(); ++i) {
    for (std::int64_t j = 0; j < b.multiplicity(); ++j) {
      auto order = detail::conjugate_difference_order(a, i, b, j);
      if (!order) fail(ErrorKind::branches_coincide, "the two branches are the same curve");
      if (!best || *order > *best) best = order;
    }
  }
  return *best;
}

/// Exponents where the gcd of (m, numerators over m) strictly drops.
inline std::vector<Rational> characteristic_exponents(const PuiseuxBranch& b) {
  const std::int64_t m = b.multiplicity();
  std::int64_t g = m;
  std::vector<Rational> out;
  for (const auto& t : b.terms()) {
    Rational scaled = t.exponent * m;
    ensure(scaled.denominator() == 1, ErrorKind::internal, "exponent not in (1/m)Z");
    std::int64_t next = std::gcd(g, scaled.numerator());
    if (next < g) out.push_back(t.exponent);
    g = next;
  }
  return out;
}

/// For a parametrisation (w^n, sum_j a_j w^j) with support `support`: the j
/// in support \ {n} where gcd{i in {n} u support, i <= j} is strictly below
/// gcd{i in {n} u support, i < j}.
inline std::vector<std::int64_t> essential_integer_exponents(std::int64_t n, const std::vector<std::int64_t>& support) {
  if (n < 1) fail(ErrorKind::invalid_value, "n must be positive");
  std::set<std::int64_t> all(support.begin(), support.end());
  all.insert(n);
  std::vector<std::int64_t> out;
  for (auto j : all) {
    if (j == n || std::find(support.begin(), support.end(), j) == support.end()) continue;
    std::int64_t below = 0;
    std::int64_t upto = 0;
    for (auto i : all) {
      if (i < j) below = std::gcd(below, i);
      if (i <= j) upto = std::gcd(upto, i);
    }
    if (below != 0 && upto < below) out.push_back(j);
  }
  return out;
}

/// Strict transform in the chart y = x y': every exponent drops by one.
inline PuiseuxBranch blow_up_branch(const PuiseuxBranch& b) {
  if (b.is_axis()) return b;
  if (b.first_exponent() <= Rational(1))
    fail(ErrorKind::exponent_underflow,
         "first exponent " + to_string(b.first_exponent()) + " <= 1: branch is not tangent to the x-axis");
  auto out = b.shifted(Rational(-1));
  if (b.first_exponent() >= Rational(2)) {
    auto before = characteristic_exponents(b);
    auto after = characteristic_exponents(out);
    for (auto& e : before) e -= 1;
    ensure(before == after, ErrorKind::internal, "blow-up did not shift the characteristic exponents by one");
  }
  return out;
}

/// `x + 2 x^2 - 3/2 x^(5/2)`; parse_series reads it back.
inline std::string to_string(const PuiseuxBranch& b) {
  if (b.is_axis()) return "0";
  std::string out;
  for (const auto& t : b.terms()) {
    Rational c = t.coefficient;
    if (out.empty()) {
      if (c < Rational(0)) out += "-";
    } else {
      out += c < Rational(0) ? " - " : " + ";
    }
    c = abs(c);
    if (c != Rational(1)) out += to_string(c) + " ";
    out += "x";
    if (t.exponent.denominator() != 1) {
      out += "^(" + to_string(t.exponent) + ")";
    } else if (t.exponent != Rational(1)) {
      out += "^" + to_string(t.exponent);
    }
  }
  return out;
}

namespace detail {

inline Rational parse_number_prefix(std::string_view s, std::size_t& pos, bool& found) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  found = pos > start;
  if (!found) return Rational(1);
  std::int64_t num = parse_integer(s.substr(start, pos - start));
  std::int64_t den = 1;
  if (pos < s.size() && s[pos] == '/') {
    std::size_t dstart = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) fail(ErrorKind::syntax, "missing denominator");
    den = parse_integer(s.substr(dstart, pos - dstart));
    if (den == 0) fail(ErrorKind::syntax, "zero denominator");
  }
  return Rational(num, den);
}

}  // namespace detail

/// Parses `c1 x^e1 + c2 x^e2 ...`. Coefficients are optional (default 1),
/// `x` alone means exponent 1, exponents may be written `p/q` or `(p/q)`.
inline PuiseuxBranch parse_series(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorKind::syntax, "empty series");
  if (s == "0") return PuiseuxBranch({});
  std::vector<PuiseuxTerm> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign(1);
    if (!terms.empty()) {
      if (s[pos] != '+' && s[pos] != '-') fail(ErrorKind::syntax, "expected '+' or '-' between terms in '" + s + "'");
    }
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    bool has_coeff = false;
    Rational coeff = detail::parse_number_prefix(s, pos, has_coeff);
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos >= s.size() || s[pos] != 'x') fail(ErrorKind::syntax, "expected 'x' in '" + s + "'");
    ++pos;
    Rational exponent(1);
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      bool paren = pos < s.size() && s[pos] == '(';
      if (paren) ++pos;
      bool found = false;
      exponent = detail::parse_number_prefix(s, pos, found);
      if (!found) fail(ErrorKind::syntax, "expected an exponent in '" + s + "'");
      if (paren) {
        if (pos >= s.size() || s[pos] != ')') fail(ErrorKind::syntax, "missing ')' in '" + s + "'");
        ++pos;
      }
    }
    terms.push_back({exponent, sign * coeff});
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.exponent < y.exponent; });
  try {
    return PuiseuxBranch(std::move(terms));
  } catch (const Error& e) {
    fail(ErrorKind::syntax, e.what());
  }
}

struct NamedBranch {
  std::string name;
  PuiseuxBranch branch;
};

/// Branch file: `branch <name> = <series>` per line, `#` comments.
inline std::vector<NamedBranch> parse_branch_file(std::string_view text) {
  std::vector<NamedBranch> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto where = [&](const std::string& msg) { return "line " + std::to_string(line_no) + ": " + msg; };
    std::istringstream words(line.substr(first));
    std::string keyword;
    std::string name;
    words >> keyword >> name;
    if (keyword != "branch" || name.empty()) fail(ErrorKind::syntax, where("expected 'branch <name> = <series>'"));
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::syntax, where("missing '='"));
    if (name.back() == '=') name.pop_back();
    for (const auto& nb : out)
      if (nb.name == name) fail(ErrorKind::syntax, where("duplicate branch name '" + name + "'"));
    try {
      out.push_back({name, parse_series(line.substr(eq + 1))});
    } catch (const Error& e) {
      fail(ErrorKind::syntax, where(e.what()));
    }
  }
  if (out.empty()) fail(ErrorKind::syntax, "no branches in file");
  return out;
}

}  // namespace singlip
