#include "cml/structure.hpp"

#include <algorithm>

namespace cml {

GeneralStructure::GeneralStructure(Vocabulary vocab, std::vector<std::string> universe)
    : vocab_(std::move(vocab)), universe_(std::move(universe)) {
  if (universe_.empty()) throw StructuralError("universe must be non-empty");
  for (int i = 0; i < static_cast<int>(universe_.size()); ++i) {
    if (universe_[i].empty()) throw StructuralError("empty element label");
    auto [it, inserted] = index_.emplace(universe_[i], i);
    if (!inserted) throw StructuralError("duplicate element label: " + universe_[i]);
  }
  for (const auto& p : vocab_.predicates())
    pred_tables_.emplace_back(table_size(p.arity), TruthValue::zero());
  for (const auto& f : vocab_.functions())
    fun_tables_.emplace_back(table_size(f.arity), 0);
  const_map_.assign(vocab_.constants().size(), 0);
}

int GeneralStructure::element(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw EvalError("element literal not in universe: " + label);
  return it->second;
}

std::size_t GeneralStructure::tuple_rank(std::span<const int> tuple) const {
  std::size_t r = 0;
  for (int e : tuple) r = r * universe_.size() + static_cast<std::size_t>(e);
  return r;
}

std::vector<int> GeneralStructure::tuple_unrank(std::size_t rank, int arity) const {
  std::vector<int> tuple(arity);
  for (int i = arity - 1; i >= 0; --i) {
    tuple[i] = static_cast<int>(rank % universe_.size());
    rank /= universe_.size();
  }
  return tuple;
}

std::size_t GeneralStructure::table_size(int arity) const {
  std::size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= universe_.size();
  return s;
}

const TruthValue& GeneralStructure::pred_value(int pred, std::span<const int> tuple) const {
  return pred_tables_.at(pred).at(tuple_rank(tuple));
}
void GeneralStructure::set_pred_value(int pred, std::span<const int> tuple, TruthValue v) {
  pred_tables_.at(pred).at(tuple_rank(tuple)) = std::move(v);
}
void GeneralStructure::set_pred_value_at(int pred, std::size_t rank, TruthValue v) {
  pred_tables_.at(pred).at(rank) = std::move(v);
}

int GeneralStructure::fun_value(int fun, std::span<const int> tuple) const {
  return fun_tables_.at(fun).at(tuple_rank(tuple));
}
void GeneralStructure::set_fun_value(int fun, std::span<const int> tuple, int result) {
  if (result < 0 || result >= size()) throw StructuralError("function value outside universe");
  fun_tables_.at(fun).at(tuple_rank(tuple)) = result;
}
void GeneralStructure::set_fun_value_at(int fun, std::size_t rank, int result) {
  if (result < 0 || result >= size()) throw StructuralError("function value outside universe");
  fun_tables_.at(fun).at(rank) = result;
}

void GeneralStructure::set_constant(int c, int element) {
  if (element < 0 || element >= size()) throw StructuralError("constant value outside universe");
  const_map_.at(c) = element;
}

bool GeneralStructure::two_valued() const {
  for (const auto& table : pred_tables_)
    for (const TruthValue& v : table)
      if (!(v == TruthValue::zero() || v == TruthValue::one())) return false;
  return true;
}

Partition Partition::single(int n) {
  std::vector<int> classes(n, 0);
  return from_classes(classes);
}

Partition Partition::discrete(int n) {
  std::vector<int> classes(n);
  for (int i = 0; i < n; ++i) classes[i] = i;
  return from_classes(classes);
}

Partition Partition::from_classes(const std::vector<int>& classes) {
  Partition p;
  p.block_of.assign(classes.size(), -1);
  std::unordered_map<int, int> renumber;
  for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
    auto [it, inserted] = renumber.emplace(classes[i], static_cast<int>(p.blocks.size()));
    if (inserted) p.blocks.emplace_back();
    p.block_of[i] = it->second;
    p.blocks[it->second].push_back(i);
  }
  // Blocks are created in order of smallest member, members in order.
  return p;
}

}  // namespace cml
