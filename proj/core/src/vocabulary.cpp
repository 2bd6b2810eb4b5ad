#include "cml/vocabulary.hpp"

namespace cml {

void Vocabulary::claim(const std::string& name, char kind) {
  if (name.empty()) throw StructuralError("empty symbol name");
  auto [it, inserted] = kinds_.emplace(name, kind);
  if (!inserted) throw StructuralError("duplicate symbol name: " + name);
}

void Vocabulary::add_predicate(const std::string& name, int arity) {
  if (arity < 1) throw StructuralError("predicate " + name + " must have arity >= 1");
  claim(name, 'P');
  preds_.push_back({name, arity});
}

void Vocabulary::add_function(const std::string& name, int arity) {
  if (arity < 1) throw StructuralError("function " + name + " must have arity >= 1");
  claim(name, 'F');
  funcs_.push_back({name, arity});
}

void Vocabulary::add_constant(const std::string& name) {
  claim(name, 'C');
  consts_.push_back(name);
}

namespace {
template <class Vec, class Get>
std::optional<int> find_index(const Vec& v, const Get& get, const std::string& name) {
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (get(v[i]) == name) return i;
  return std::nullopt;
}
}  // namespace

std::optional<int> Vocabulary::predicate_index(const std::string& name) const {
  return find_index(preds_, [](const Symbol& s) { return s.name; }, name);
}
std::optional<int> Vocabulary::function_index(const std::string& name) const {
  return find_index(funcs_, [](const Symbol& s) { return s.name; }, name);
}
std::optional<int> Vocabulary::constant_index(const std::string& name) const {
  return find_index(consts_, [](const std::string& s) { return s; }, name);
}

Vocabulary Vocabulary::with_reversed_predicates() const {
  Vocabulary v;
  for (auto it = preds_.rbegin(); it != preds_.rend(); ++it) v.add_predicate(it->name, it->arity);
  for (const auto& f : funcs_) v.add_function(f.name, f.arity);
  for (const auto& c : consts_) v.add_constant(c);
  return v;
}

Vocabulary Vocabulary::with_distance_symbol(const std::string& name) const {
  Vocabulary v = *this;
  v.add_predicate(name, 2);
  return v;
}

}  // namespace cml
