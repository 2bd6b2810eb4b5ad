#ifndef CML_RANDOMGEN_HPP
#define CML_RANDOMGEN_HPP

#include <cstdint>
#include <random>

#include "cml/structure.hpp"

namespace cml {

/// Deterministic seeded source. Bounded draws use plain modulo reduction
/// on the raw engine output so results are identical across platforms and
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<unsigned>(n)); }

  /// Uniform-ish p/q with q = 2^j for a random j <= max_denom_log2.
  Rational truth_value(int max_denom_log2) {
    int den = 1 << below(max_denom_log2 + 1);
    return Rational(below(den + 1), den);
  }

  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

struct RandomVocabOptions {
  int min_predicates = 1;
  int max_predicates = 4;
  int max_pred_arity = 3;
  int max_functions = 0;
  int max_fun_arity = 2;
  int max_constants = 0;
};

/// Predicates P0.., functions f0.., constants c0.. with random arities.
Vocabulary random_vocabulary(Rng& rng, const RandomVocabOptions& options);

/// A total structure over the vocabulary with universe labels e0..e{n-1},
/// predicate values with denominators up to 2^denom_log2 (or exactly
/// {0, 1} when two_valued), random function tables and constants.
GeneralStructure random_structure(const Vocabulary& vocab, int universe_size, int denom_log2,
                                  Rng& rng, bool two_valued = false);

}  // namespace cml

#endif
