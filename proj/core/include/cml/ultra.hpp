#ifndef CML_ULTRA_HPP
#define CML_ULTRA_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cml/reduction.hpp"
#include "cml/structure.hpp"

namespace cml {

/// An ultrafilter over a finite index set {0..size-1}. Every ultrafilter
/// over a finite set is principal, so one index determines it: a subset
/// belongs to the filter iff it contains principal_at.
struct Ultrafilter {
  int index_size = 1;
  int principal_at = 0;

  bool contains(std::span<const int> subset) const;

  /// All ultrafilters over {0..n-1}; there are exactly n, all principal.
  static std::vector<Ultrafilter> enumerate(int n);
};

/// The limit along the ultrafilter of a total map index -> truth value;
/// for a principal filter this is the value at the principal coordinate.
TruthValue ulim(const Ultrafilter& d, std::span<const TruthValue> values);

/// Universe = cartesian product of the factor universes (labels
/// "<a,b,...>" in angle brackets), functions act coordinatewise, predicate
/// values are ultrafilter limits of the coordinate values.
GeneralStructure pre_ultraproduct(std::span<const GeneralStructure> factors,
                                  const Ultrafilter& d);

struct Ultraproduct {
  GeneralStructure pre;
  Reduction reduction;  // of the pre-ultraproduct
  std::vector<std::size_t> factor_sizes;

  const GeneralStructure& reduced() const { return reduction.quotient; }
  /// Rank of a coordinate vector in the pre-ultraproduct universe.
  int pre_index(std::span<const int> coords) const;
  /// Coordinates of a pre-ultraproduct element.
  std::vector<int> coords_of(int pre_element) const;
  /// Quotient class of a pre-ultraproduct element.
  int class_of(int pre_element) const { return reduction.partition.block_of[pre_element]; }
};

/// The reduction of the pre-ultraproduct.
Ultraproduct ultraproduct(std::span<const GeneralStructure> factors, const Ultrafilter& d);

struct LosViolation {
  std::size_t formula_index;
  std::vector<std::string> tuple_labels;
  TruthValue product_value;
  TruthValue limit_value;
};

struct LosReport {
  std::size_t formulas_checked = 0;
  std::size_t tuples_checked = 0;
  bool pass = true;
  std::optional<LosViolation> first_violation;
};

/// Verifies, for every supplied formula and every tuple over the cartesian
/// product, that the value in the ultraproduct at the reduced tuple equals
/// the ultrafilter limit of the factor values. Exact; any violation would
/// witness an implementation bug, not a mathematical possibility.
LosReport check_los(std::span<const GeneralStructure> factors, const Ultrafilter& d,
                    std::span<const Formula> formulas);

/// Same check against a caller-supplied (possibly corrupted) ultraproduct;
/// the harness uses this for fault injection.
LosReport check_los_on(const Ultraproduct& up, std::span<const GeneralStructure> factors,
                       const Ultrafilter& d, std::span<const Formula> formulas);

}  // namespace cml

#endif
