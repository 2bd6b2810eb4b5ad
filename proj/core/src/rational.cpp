#include "cml/rational.hpp"

#include <cctype>

namespace cml {

Rational pow2(int e) {
  Integer p = 1;
  p <<= (e >= 0 ? e : -e);
  return e >= 0 ? Rational(p) : Rational(1, p);
}

std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den)) return std::nullopt;
  }
  if (!all_digits(num)) return std::nullopt;
  Integer p{std::string(num)};
  Integer q = den.empty() ? Integer(1) : Integer{std::string(den)};
  if (q == 0) return std::nullopt;
  Rational r(p, q);
  return negative ? -r : r;
}

bool is_dyadic(const Rational& r) {
  Integer q = denominator(r);
  while (q % 2 == 0) q /= 2;
  return q == 1;
}

TruthValue tv_absdiff(const TruthValue& a, const TruthValue& b) {
  return TruthValue(tv_gap(a, b));
}

Rational tv_gap(const TruthValue& a, const TruthValue& b) {
  Rational d = a.value() - b.value();
  return d < 0 ? Rational(-d) : d;
}

}  // namespace cml
