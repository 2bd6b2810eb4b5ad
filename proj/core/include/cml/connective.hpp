#ifndef CML_CONNECTIVE_HPP
#define CML_CONNECTIVE_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cml/rational.hpp"

namespace cml {

/// The fixed basis of continuous connectives. Each is Lipschitz in every
/// argument under the sup metric; the constant is stored and testable.
///
///   const(r)   arity 0   r
///   neg        arity 1   1 - x
///   dotminus   arity 2   max(x - y, 0)
///   dotplus    arity 2   min(x + y, 1)
///   min        arity 2   min(x, y)
///   max        arity 2   max(x, y)
///   half       arity 1   x / 2
///   absdiff    arity 2   |x - y|
class Connective {
 public:
  enum class Kind { Const, Neg, DotMinus, DotPlus, Min, Max, Half, AbsDiff };

  static Connective constant(Rational r);
  static Connective neg() { return Connective(Kind::Neg); }
  static Connective dotminus() { return Connective(Kind::DotMinus); }
  static Connective dotplus() { return Connective(Kind::DotPlus); }
  static Connective min() { return Connective(Kind::Min); }
  static Connective max() { return Connective(Kind::Max); }
  static Connective half() { return Connective(Kind::Half); }
  static Connective absdiff() { return Connective(Kind::AbsDiff); }

  Kind kind() const { return kind_; }
  int arity() const;

  /// Token used in the surface syntax ("min", "dotminus", ...); constants
  /// render as their rational literal.
  std::string name() const;

  /// The value of a nullary constant connective.
  const Rational& constant_value() const;

  /// Per-argument Lipschitz constant under the sup metric on arguments:
  /// 0 for const, 1/2 for half, 1 for everything else.
  Rational lipschitz_constant() const;

  TruthValue apply(std::span<const TruthValue> args) const;

  friend bool operator==(const Connective& a, const Connective& b) {
    return a.kind_ == b.kind_ && a.const_ == b.const_;
  }

 private:
  explicit Connective(Kind k, Rational c = Rational(0)) : kind_(k), const_(std::move(c)) {}
  Kind kind_;
  Rational const_;
};

TruthValue apply_connective(const Connective& conn, std::span<const TruthValue> args);

}  // namespace cml

#endif
