#ifndef CML_REDUCTION_HPP
#define CML_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "cml/evaluate.hpp"
#include "cml/family.hpp"
#include "cml/structure.hpp"

namespace cml {

/// The coarsest partition E of the universe such that (i) every predicate
/// table is invariant under replacing any one argument by an E-equivalent
/// element, and (ii) every function maps E-related arguments (one position
/// at a time) to E-related values. Computed as a greatest fixpoint by
/// partition refinement; on finite structures this is exactly
/// indistinguishability by atomic formulas with parameters.
Partition leibniz_partition(const GeneralStructure& m);

struct Reduction {
  GeneralStructure quotient;
  Partition partition;
  /// partition.block_of doubles as the quotient map element -> block.
  const std::vector<int>& map() const { return partition.block_of; }
};

/// Quotient by the Leibniz partition. Block labels are the labels of the
/// smallest-index representative of each block.
Reduction reduce(const GeneralStructure& m);

struct EmbeddingReport {
  bool embedding = true;
  std::string failure;  // description of the first atomic failure
  bool elementary = true;
  std::optional<Formula> elementary_witness;
  std::size_t formulas_checked = 0;
};

/// h maps element indices of m into n. The embedding flag is exact (all
/// atomic conditions checked exhaustively); the elementary flag is checked
/// against the canonical formula family up to the depth budget, so a false
/// answer is sound and a true answer is bounded confirmation only.
EmbeddingReport is_embedding(const std::vector<int>& h, const GeneralStructure& m,
                             const GeneralStructure& n, int depth_budget = 2,
                             std::size_t max_formulas = 120);

struct DistinguishResult {
  std::optional<Formula> witness;
  TruthValue gap;
  std::size_t sentences_checked = 0;
};

/// Searches the canonical sentence family up to the depth budget for a
/// sentence with maximal |value in m - value in n|; among ties the first in
/// generation order wins. Returns no witness when every gap is zero.
DistinguishResult distinguish(const GeneralStructure& m, const GeneralStructure& n,
                              int depth_budget = 3, std::size_t max_sentences = 200);

}  // namespace cml

#endif
