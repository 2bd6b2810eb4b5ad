#ifndef CML_INTERP_TYPES_HPP
#define CML_INTERP_TYPES_HPP

#include <string>
#include <vector>

#include "cml/formula.hpp"
#include "cml/rational.hpp"

namespace cml {

/// True if f is positive: built from atomic formulas with min (conjunction,
/// 0 means true), max (disjunction), sup, inf, and the constants 0 ("true",
/// the empty conjunction) and 1. No negation, no dotminus/dotplus/half.
bool is_positive_formula(const Formula& f);

/// Throws StructuralError naming the offending connective otherwise.
void validate_positive_formula(const Formula& f);

/// A positive interpretation of predicate symbols over a base (two-valued)
/// vocabulary. For each target predicate P and dyadic grid point r = j/2^g,
/// lower(P, r) interprets "P in [0, r]" and upper(P, r) interprets
/// "P in [r, 1]". Boundary entries lower(P, 1) and upper(P, 0) default to
/// the true sentence (the constant 0).
struct Interpretation {
  struct TargetPredicate {
    std::string name;
    int arity;
  };

  int grid_log2 = 0;  // grid denominator 2^g
  std::vector<TargetPredicate> targets;
  // lower[p][j], upper[p][j] for j = 0..2^g; grid point r = j / 2^g.
  std::vector<std::vector<Formula>> lower, upper;

  int grid_points() const { return (1 << grid_log2) + 1; }
  Rational grid_value(int j) const { return Rational(j) / pow2(grid_log2); }

  /// Index j with r = j/2^g, or -1 when r is not on the grid.
  int grid_index(const Rational& r) const;

  /// The canonical frame x1..xk used by interpretation formulas.
  static std::vector<std::string> frame(int arity);
};

}  // namespace cml

#endif
