#ifndef CML_CHECKS_HPP
#define CML_CHECKS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cml/evaluate.hpp"
#include "cml/expansion.hpp"
#include "cml/structure.hpp"

namespace cml {

/// A fully materialized symmetric-intent distance over one structure's
/// universe (values at all ordered pairs, a * n + b).
struct DistanceTable {
  int n = 0;
  std::vector<TruthValue> values;

  const TruthValue& at(int a, int b) const { return values[static_cast<std::size_t>(a) * n + b]; }

  static DistanceTable from_formula(const GeneralStructure& m, const Formula& d,
                                    const std::string& var_x, const std::string& var_y);
  static DistanceTable from_distance(const GeneralStructure& m, const ApproximateDistance& ad);
  /// From a binary predicate of the structure itself.
  static DistanceTable from_predicate(const GeneralStructure& m, const std::string& pred);
};

struct PseudometricReport {
  enum class Violation { None, Reflexivity, Symmetry, Triangle };
  bool pass = true;
  Violation kind = Violation::None;
  int a = -1, b = -1, c = -1;
  TruthValue lhs, rhs;
};

/// d(a,a) = 0, symmetry, and the triangle inequality, exhaustively over all
/// element triples in canonical order; first violation reported.
PseudometricReport check_pseudometric(const GeneralStructure& m, const DistanceTable& d);

struct ModulusReport {
  bool pass = true;
  // Worst observed pair: the largest gap relative to the allowed bound.
  Rational worst_gap{0};
  Rational worst_bound{0};
  std::vector<int> witness_left, witness_right;
};

/// |P(s) - P(t)| <= coefficient * max_i d(s_i, t_i) over all tuple pairs
/// (the exact linear form of the modulus condition).
ModulusReport check_modulus(const GeneralStructure& m, int pred, const Rational& coefficient,
                            const DistanceTable& d);

/// Grid-relaxed form: for every eps = j/2^g on the grid, pairs closer than
/// eps/coefficient have gaps at most eps. Implied by the linear form.
ModulusReport check_modulus_grid(const GeneralStructure& m, int pred, const Rational& coefficient,
                                 const DistanceTable& d, int grid_log2);

struct MetAxioms {
  Vocabulary vocab;  // base vocabulary plus the distance symbol
  Theory theory;
  int schemata = 0;  // reflexivity, symmetry, triangle, one modulus schema per symbol
};

/// Sentences asserting that the distance symbol is a pseudo-metric and, per
/// symbol with a modulus coefficient, the modulus implication discretized
/// over the dyadic grid eps = j/2^g (j = 1..2^g). A finite structure with
/// the distance adjoined models this theory iff check_pseudometric passes
/// and every symbol passes check_modulus_grid at that grid.
MetAxioms met_axioms(const Vocabulary& base, const MetricSignature& sig, int grid_log2);

/// The base structure expanded with a table for the distance symbol.
GeneralStructure with_distance(const GeneralStructure& m, const DistanceTable& d,
                               const std::string& symbol);

struct UniformEquivalenceReport {
  bool zero_sets_equal = true;
  int witness_a = -1, witness_b = -1;
  // Empirical modulus tables: for each observed value v of one distance,
  // the max of the other over pairs at most v apart.
  std::vector<std::pair<Rational, Rational>> table_12, table_21;
};

UniformEquivalenceReport check_uniform_equivalence(const GeneralStructure& m,
                                                   const DistanceTable& d1,
                                                   const DistanceTable& d2);

struct CauchyReport {
  bool pass = true;
  int worst_m = -1, worst_k = -1;
  Rational worst_gap{0};
  Rational worst_bound{0};
  int witness_structure = -1;
  std::map<std::string, std::string> witness_assignment;  // variable -> element label
};

/// Exact finite-witness check of the exponential Cauchy condition: for all
/// m <= k and all frame assignments in every witness structure,
/// |entry_m - entry_k| <= schedule(m). The worst pair maximizes the excess
/// gap - bound.
CauchyReport check_cauchy(const FormulaSequence& seq,
                          std::span<const GeneralStructure> witnesses);

/// Linear modulus coefficient for a compound formula, composed along the
/// AST from the signature's per-symbol coefficients and the connectives'
/// Lipschitz constants: |f(a) - f(b)| <= c * max_i D(a_i, b_i).
Rational modulus_coefficient(const Formula& f, const MetricSignature& sig,
                             const Vocabulary& vocab);

}  // namespace cml

#endif
