#ifndef CML_FAMILY_HPP
#define CML_FAMILY_HPP

#include <cstddef>
#include <vector>

#include "cml/formula.hpp"

namespace cml {

/// Canonical formula family generation. The order is deterministic and
/// documented here, because reports ("first witness", "first maximal gap")
/// are defined relative to it:
///
///   height 1: atoms, predicates in declaration order, argument tuples in
///     lexicographic order over the canonical term list (pool variables
///     x1..xn first, then function applications by declaration order,
///     nested up to term_depth).
///   height h: quantifiers (per body in list order: sup then inf per free
///     variable in pool order), then unary connectives (neg, half), then
///     binary connectives (min, max, dotminus, dotplus, absdiff) over pairs
///     in lexicographic order of operand indices.
///
/// Duplicates are removed up to alpha-equality. Generation stops at
/// max_count; each height level is given an equal share of the budget so
/// deep formulas are represented even under tight caps.
struct FamilyOptions {
  int max_height = 3;
  int var_pool = 2;
  int term_depth = 1;            // max function nesting inside atoms
  std::size_t max_count = 200;
  bool positive_only = false;    // atoms, min, max, sup, inf only
};

std::vector<Formula> generate_family(const Vocabulary& vocab, const FamilyOptions& options);

/// The family with every formula closed by sup over its free variables (in
/// sorted order, innermost first), deduplicated, order preserved.
std::vector<Formula> generate_sentence_family(const Vocabulary& vocab,
                                              const FamilyOptions& options);

/// Pool variable names x1..xn, skipping any name colliding with a declared
/// symbol (collisions get a trailing underscore).
std::vector<std::string> family_variable_pool(const Vocabulary& vocab, int n);

/// A variable name based on `base` that does not collide with any symbol
/// declared in the vocabulary.
std::string fresh_variable(const Vocabulary& vocab, const std::string& base);

}  // namespace cml

#endif
