#include "cml/randomgen.hpp"

namespace cml {

Vocabulary random_vocabulary(Rng& rng, const RandomVocabOptions& options) {
  Vocabulary v;
  int preds = options.min_predicates +
              rng.below(options.max_predicates - options.min_predicates + 1);
  for (int i = 0; i < preds; ++i)
    v.add_predicate("P" + std::to_string(i), 1 + rng.below(options.max_pred_arity));
  int funcs = options.max_functions > 0 ? rng.below(options.max_functions + 1) : 0;
  for (int i = 0; i < funcs; ++i)
    v.add_function("f" + std::to_string(i), 1 + rng.below(options.max_fun_arity));
  int consts = options.max_constants > 0 ? rng.below(options.max_constants + 1) : 0;
  for (int i = 0; i < consts; ++i) v.add_constant("c" + std::to_string(i));
  return v;
}

GeneralStructure random_structure(const Vocabulary& vocab, int universe_size, int denom_log2,
                                  Rng& rng, bool two_valued) {
  std::vector<std::string> labels;
  labels.reserve(universe_size);
  for (int i = 0; i < universe_size; ++i) labels.push_back("e" + std::to_string(i));
  GeneralStructure m(vocab, std::move(labels));

  for (std::size_t p = 0; p < vocab.predicates().size(); ++p)
    for (std::size_t rank = 0; rank < m.table_size(vocab.predicates()[p].arity); ++rank) {
      Rational v = two_valued ? Rational(rng.below(2)) : rng.truth_value(denom_log2);
      m.set_pred_value_at(static_cast<int>(p), rank, TruthValue(v));
    }
  for (std::size_t f = 0; f < vocab.functions().size(); ++f)
    for (std::size_t rank = 0; rank < m.table_size(vocab.functions()[f].arity); ++rank)
      m.set_fun_value_at(static_cast<int>(f), rank, rng.below(universe_size));
  for (std::size_t c = 0; c < vocab.constants().size(); ++c)
    m.set_constant(static_cast<int>(c), rng.below(universe_size));
  return m;
}

}  // namespace cml
