#ifndef CML_EVALUATE_HPP
#define CML_EVALUATE_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cml/formula.hpp"
#include "cml/structure.hpp"

namespace cml {

/// Variable assignment, by element index.
using Assignment = std::map<std::string, int>;

Assignment assignment_from_labels(const GeneralStructure& m,
                                  const std::map<std::string, std::string>& labels);

/// Memoizing truth-value evaluator for one structure. Sup/inf quantifiers
/// range over the finite universe; results are exact rationals. The memo
/// keys on (formula node, assignment restricted to its free variables), so
/// formula sequences that share subtrees evaluate in amortized linear time.
class Evaluator {
 public:
  explicit Evaluator(const GeneralStructure& m) : m_(&m) {}

  TruthValue eval(const Formula& f, const Assignment& assignment = {});

  /// All values of f over assignments to `vars` in rank order (the i-th
  /// entry is the tuple with rank i over the universe). Every free variable
  /// of f must appear in `vars`.
  std::vector<TruthValue> table(const Formula& f, std::span<const std::string> vars);

  const GeneralStructure& structure() const { return *m_; }

 private:
  struct Env {
    std::vector<std::pair<std::string, int>> stack;
    std::optional<int> lookup(const std::string& v) const {
      for (auto it = stack.rbegin(); it != stack.rend(); ++it)
        if (it->first == v) return it->second;
      return std::nullopt;
    }
  };

  TruthValue eval_rec(const Formula& f, Env& env);
  int eval_term(const Term& t, const Env& env);

  const GeneralStructure* m_;
  // memo[node][packed free-var values] = value
  std::unordered_map<const void*, std::map<std::vector<int>, TruthValue>> memo_;
};

/// One-shot evaluation (fresh evaluator, no memo reuse across calls).
TruthValue evaluate(const GeneralStructure& m, const Formula& f, const Assignment& assignment = {});

struct ModelReport {
  bool is_model = true;
  std::optional<int> failing_index;
  TruthValue failing_value;
};

/// True iff every sentence evaluates within the tolerance of 0 (exactly 0
/// by default). Reports the first failing sentence and its value.
ModelReport is_model(const GeneralStructure& m, const Theory& theory,
                     const Rational& tolerance = Rational(0));

}  // namespace cml

#endif
