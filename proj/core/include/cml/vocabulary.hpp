#ifndef CML_VOCABULARY_HPP
#define CML_VOCABULARY_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cml/errors.hpp"

namespace cml {

/// Predicate, function, and constant symbols. Names are unique across all
/// three lists; declaration order is stable and observable (it drives the
/// canonical enumerations elsewhere in the library).
class Vocabulary {
 public:
  struct Symbol {
    std::string name;
    int arity;
    friend bool operator==(const Symbol&, const Symbol&) = default;
  };

  void add_predicate(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);
  void add_constant(const std::string& name);

  const std::vector<Symbol>& predicates() const { return preds_; }
  const std::vector<Symbol>& functions() const { return funcs_; }
  const std::vector<std::string>& constants() const { return consts_; }

  std::optional<int> predicate_index(const std::string& name) const;
  std::optional<int> function_index(const std::string& name) const;
  std::optional<int> constant_index(const std::string& name) const;
  bool has_symbol(const std::string& name) const { return kinds_.count(name) > 0; }

  bool relational() const { return funcs_.empty(); }

  /// Same symbols with the predicate declaration order reversed.
  Vocabulary with_reversed_predicates() const;

  /// This vocabulary plus a fresh binary predicate for a distance symbol.
  Vocabulary with_distance_symbol(const std::string& name) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.preds_ == b.preds_ && a.funcs_ == b.funcs_ && a.consts_ == b.consts_;
  }

 private:
  void claim(const std::string& name, char kind);
  std::vector<Symbol> preds_, funcs_;
  std::vector<std::string> consts_;
  std::unordered_map<std::string, char> kinds_;  // 'P', 'F', 'C'
};

}  // namespace cml

#endif
