#ifndef CML_INTERP_HPP
#define CML_INTERP_HPP

#include <optional>
#include <string>
#include <vector>

#include "cml/evaluate.hpp"
#include "cml/interp_types.hpp"
#include "cml/structure.hpp"

namespace cml {

/// Throws StructuralError unless every predicate value of k is 0 or 1
/// (0 meaning true, matching the kernel convention).
void validate_classical(const GeneralStructure& k);

struct InterpConditionViolation {
  char condition;  // 'a', 'b', or 'c'
  std::string predicate;
  Rational r, s;  // grid pair r < s
  std::vector<int> tuple;
};

struct InterpConditionsReport {
  bool pass = true;
  std::optional<InterpConditionViolation> first_violation;
};

/// Exhaustively checks, for every target predicate, every grid pair r < s,
/// and every tuple: (a) lower sets grow and upper sets shrink with r,
/// (b) lower-at-r and upper-at-s are disjoint, (c) upper-at-r and
/// lower-at-s cover everything.
InterpConditionsReport check_interpretation_conditions(const Interpretation& interp,
                                                       const GeneralStructure& k);

struct UpgradeFailure {
  std::string predicate;
  std::vector<int> tuple;
  std::optional<Rational> sup_lower_bounds;  // sup X, absent when X is empty
  std::optional<Rational> inf_upper_bounds;  // inf Y, absent when Y is empty
};

struct UpgradeResult {
  std::optional<GeneralStructure> structure;
  std::optional<UpgradeFailure> failure;
};

/// Builds the [0,1]-valued structure over k's universe: same functions and
/// constants, and per target predicate and tuple,
///   P(b) = sup { r on the grid : b satisfies upper(P, r) }.
/// The dual value inf { s : b satisfies lower(P, s) } is computed as well
/// and any discrepancy is reported as a failure instead of a structure.
UpgradeResult upgrade(const Interpretation& interp, const GeneralStructure& k);

/// Partitions the universe by agreement on all positive formulas with one
/// free variable from the canonical positive family up to the depth
/// budget (a bounded surrogate for complete positive types).
Partition positive_type_partition(const GeneralStructure& k, int depth_budget,
                                  std::size_t max_formulas = 200);

/// Same, over the full connective basis (bounded continuous types).
Partition continuous_type_partition(const GeneralStructure& m, int depth_budget,
                                    std::size_t max_formulas = 200);

}  // namespace cml

#endif
