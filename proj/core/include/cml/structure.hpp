#ifndef CML_STRUCTURE_HPP
#define CML_STRUCTURE_HPP

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cml/formula.hpp"
#include "cml/rational.hpp"
#include "cml/vocabulary.hpp"

namespace cml {

/// A finite general structure: a non-empty universe of labelled elements,
/// a total [0,1]-valued table per predicate, a total function table per
/// function symbol, and an element per constant. Tables are stored in
/// row-major rank order over element indices, which is also the canonical
/// tuple order used by every exhaustive check and report.
///
/// Construction fills all tables with zeros (a valid total structure);
/// parsers enforce explicit completeness themselves. Treat instances as
/// immutable once built.
class GeneralStructure {
 public:
  GeneralStructure(Vocabulary vocab, std::vector<std::string> universe);

  const Vocabulary& vocab() const { return vocab_; }
  int size() const { return static_cast<int>(universe_.size()); }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::string& label(int e) const { return universe_.at(e); }

  /// Index of a label; throws EvalError for foreign labels.
  int element(const std::string& label) const;
  bool has_element(const std::string& label) const { return index_.count(label) > 0; }

  // Tuple ranking over this universe: rank = sum a_i * n^(k-1-i).
  std::size_t tuple_rank(std::span<const int> tuple) const;
  std::vector<int> tuple_unrank(std::size_t rank, int arity) const;
  std::size_t table_size(int arity) const;

  const TruthValue& pred_value(int pred, std::span<const int> tuple) const;
  const TruthValue& pred_value_at(int pred, std::size_t rank) const {
    return pred_tables_[pred][rank];
  }
  void set_pred_value(int pred, std::span<const int> tuple, TruthValue v);
  void set_pred_value_at(int pred, std::size_t rank, TruthValue v);

  int fun_value(int fun, std::span<const int> tuple) const;
  int fun_value_at(int fun, std::size_t rank) const { return fun_tables_[fun][rank]; }
  void set_fun_value(int fun, std::span<const int> tuple, int result);
  void set_fun_value_at(int fun, std::size_t rank, int result);

  int constant_value(int c) const { return const_map_.at(c); }
  void set_constant(int c, int element);

  /// True when every predicate value is 0 or 1.
  bool two_valued() const;

 private:
  Vocabulary vocab_;
  std::vector<std::string> universe_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<TruthValue>> pred_tables_;
  std::vector<std::vector<int>> fun_tables_;
  std::vector<int> const_map_;
};

/// A partition of a structure's universe. Blocks are sorted internally and
/// ordered by smallest member, so the representation is canonical.
struct Partition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;

  static Partition single(int n);
  static Partition discrete(int n);
  /// Canonicalizes an arbitrary element->class assignment.
  static Partition from_classes(const std::vector<int>& classes);

  int size() const { return static_cast<int>(block_of.size()); }
  bool is_identity() const { return blocks.size() == block_of.size(); }
  bool same_block(int a, int b) const { return block_of[a] == block_of[b]; }

  friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace cml

#endif
