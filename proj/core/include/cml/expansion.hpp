#ifndef CML_EXPANSION_HPP
#define CML_EXPANSION_HPP

#include <map>
#include <string>
#include <vector>

#include "cml/evaluate.hpp"
#include "cml/structure.hpp"

namespace cml {

/// An atomic slot pattern P(s1..sk) over the alphabet u, z1, z2, ... with
/// at least one u and z-indices canonical by first occurrence. Slot value
/// 0 encodes u; j > 0 encodes z_j. No constant symbols appear.
struct AtomicPattern {
  int pred;                // index into the vocabulary's predicate list
  std::vector<int> slots;  // length = predicate arity

  int z_count() const;
  std::string display(const Vocabulary& vocab) const;
  friend bool operator==(const AtomicPattern&, const AtomicPattern&) = default;
};

/// Deterministic enumeration: predicates in declaration order; per
/// predicate, slot tuples in lexicographic order under u < z1 < z2 < ...;
/// tuples without u are omitted (their difference formula vanishes).
/// Throws StructuralError when the vocabulary has function symbols;
/// morleyize first.
std::vector<AtomicPattern> enumerate_patterns(const Vocabulary& vocab);

/// A finite exact limit distance: the pointwise max of weighted symmetric
/// difference formulas, weights strictly decreasing as 1, 1/2, 1/4, ...
struct ApproximateDistance {
  struct WeightedBeta {
    Rational weight;  // 2^-m for the m-th pattern
    Formula beta;     // sup_z |alpha(x,z) - alpha(y,z)|, free vars {x,y}
  };
  std::string var_x = "x", var_y = "y";
  std::vector<WeightedBeta> terms;
};

/// A distance symbol plus a linear modulus coefficient per symbol: the
/// coefficient c means the modulus is eps -> eps / c, equivalently
/// |S(a) - S(b)| <= c * max_i D(a_i, b_i).
struct MetricSignature {
  std::string distance_symbol = "D";
  std::vector<std::pair<std::string, Rational>> moduli;

  const Rational& coefficient(const std::string& symbol) const;
};

struct Synthesis {
  std::vector<AtomicPattern> patterns;
  ApproximateDistance distance;
  MetricSignature signature;
  FormulaSequence sequence;  // d_0, d_1, ... with schedule 2^-m
};

/// Builds the pre-metric expansion data for a relational vocabulary: the
/// exact limit distance, the derived signature with coefficient 2^m * k
/// per predicate (m the pattern index of its worst one-u pattern, k the
/// arity), and the d_m sequence defined by d_0 = beta_0,
/// d_m = max(d_{m-1}, 2^-m beta_m).
Synthesis synthesize_distance(const Vocabulary& vocab);

/// Exact value of the limit distance between two elements.
TruthValue eval_distance(const GeneralStructure& m, const ApproximateDistance& ad, int a, int b);

/// All pairwise distances, indexed a * n + b.
std::vector<TruthValue> distance_table(const GeneralStructure& m, const ApproximateDistance& ad);

/// Atomic Morleyization truncated at term nesting depth k: one fresh
/// predicate per constant-free atomic formula whose terms nest at most k
/// levels of function application.
struct Morleyization {
  Vocabulary vocab;                  // relational: new predicates + old constants
  GeneralStructure structure;        // same universe, new tables
  std::vector<Formula> origins;      // per new predicate, its atomic formula
                                     // over the original vocabulary (v1..vj)
  Vocabulary original_vocab;
  int depth = 0;

  /// Rewrites a formula whose atoms all nest terms at most `depth` deep
  /// into a function-free formula with identical values on the translated
  /// structure. Throws StructuralError on deeper atoms.
  Formula translate(const Formula& f) const;

  std::map<std::string, int> pattern_index;  // canonical atom key -> predicate
};

Morleyization morleyize(const GeneralStructure& m, int depth);

}  // namespace cml

#endif
