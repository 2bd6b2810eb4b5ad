#ifndef CML_RATIONAL_HPP
#define CML_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "cml/errors.hpp"

namespace cml {

/// Exact arbitrary-precision rational. All arithmetic in the library is
/// exact; there is no floating-point representation anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// 2^e for any integer e (negative exponents give 1/2^-e).
Rational pow2(int e);

/// Reduced form: "p/q" with q > 1, or the integer "p" when q == 1.
std::string rational_to_string(const Rational& r);

/// Strict parser for "p", "-p", "p/q" with q > 0. Returns std::nullopt on
/// any malformed input (no whitespace, no signs inside, no empty parts).
std::optional<Rational> parse_rational(std::string_view text);

/// True if r = p / 2^k for some integer p and k >= 0.
bool is_dyadic(const Rational& r);

/// A truth value: an exact rational confined to [0,1]. 0 means true.
class TruthValue {
 public:
  TruthValue() : v_(0) {}
  explicit TruthValue(Rational v) : v_(std::move(v)) {
    if (v_ < 0 || v_ > 1)
      throw StructuralError("truth value out of [0,1]: " + rational_to_string(v_));
  }
  TruthValue(int num, int den) : TruthValue(Rational(num, den)) {}

  static TruthValue zero() { return TruthValue(); }
  static TruthValue one() { return TruthValue(Rational(1)); }

  const Rational& value() const { return v_; }
  std::string str() const { return rational_to_string(v_); }

  friend bool operator==(const TruthValue& a, const TruthValue& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const TruthValue& a, const TruthValue& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational v_;
};

/// |a - b| as a truth value.
TruthValue tv_absdiff(const TruthValue& a, const TruthValue& b);

/// Gap between two truth values as a plain rational, |a - b|.
Rational tv_gap(const TruthValue& a, const TruthValue& b);

}  // namespace cml

#endif
