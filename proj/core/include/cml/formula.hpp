#ifndef CML_FORMULA_HPP
#define CML_FORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cml/connective.hpp"
#include "cml/vocabulary.hpp"

namespace cml {

/// A term: variable, constant symbol, element literal (a parameter naming
/// a member of some structure's universe), or function application.
/// Immutable; copies share nodes.
class Term {
 public:
  enum class Kind { Variable, Constant, Element, Apply };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term element(std::string label);
  static Term apply(std::string function, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  /// Function-application nesting: variables, constants and literals are 0.
  int depth() const { return node_->depth; }

  void collect_variables(std::set<std::string>& out) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    int depth;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A formula: atomic predicate application, connective application, or a
/// sup/inf quantifier. Immutable; the free-variable set, height, and
/// quantifier depth are computed once at construction and cached.
class Formula {
 public:
  enum class Kind { Atomic, Conn, Sup, Inf };

  static Formula atom(std::string predicate, std::vector<Term> terms);
  static Formula lift(Connective conn, std::vector<Formula> args);
  static Formula constant(Rational r);
  static Formula sup(std::string variable, Formula body);
  static Formula inf(std::string variable, Formula body);

  Kind kind() const { return node_->kind; }
  bool is_quantifier() const { return kind() == Kind::Sup || kind() == Kind::Inf; }

  /// Predicate name (Atomic) or bound variable (Sup/Inf).
  const std::string& symbol() const { return node_->symbol; }
  const Connective& conn() const { return node_->conn; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const std::vector<Formula>& args() const { return node_->args; }
  const Formula& body() const { return node_->args.at(0); }

  /// Free variables, sorted.
  const std::vector<std::string>& free_vars() const { return node_->free; }
  bool has_free(const std::string& v) const;

  int height() const { return node_->height; }
  int quantifier_depth() const { return node_->qdepth; }

  /// Node identity; stable for the lifetime of any copy. Used as a
  /// memoization key by evaluators.
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    std::string symbol;
    Connective conn = Connective::neg();  // dummy for non-Conn nodes
    std::vector<Term> terms;
    std::vector<Formula> args;
    std::vector<std::string> free;
    int height = 1;
    int qdepth = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Exactly the variables with a free occurrence, as a set.
std::set<std::string> free_vars(const Formula& f);

/// Capture-avoiding simultaneous substitution of terms for free variables.
/// Bindings for variables not free in f are no-ops. Bound variables are
/// renamed to fresh names whenever a substituted term mentions them.
Formula substitute(const Formula& f, const std::map<std::string, Term>& binding);
Term substitute(const Term& t, const std::map<std::string, Term>& binding);

/// Renames bound variables to v0, v1, ... in traversal order, skipping any
/// name in `avoid` (callers pass vocabulary symbol names so the printed
/// form re-parses unambiguously). Structural equality of normal forms is
/// alpha-equality.
Formula alpha_normalize(const Formula& f, const std::set<std::string>& avoid = {});

bool alpha_equal(const Formula& a, const Formula& b);

/// Structural equality of terms.
bool term_equal(const Term& a, const Term& b);

/// Checks predicate/function arities and symbol classes against a
/// vocabulary; throws StructuralError on the first offence.
void validate_formula(const Formula& f, const Vocabulary& vocab);
void validate_term(const Term& t, const Vocabulary& vocab);

/// Sentences: formulas with no free variables.
struct Theory {
  std::vector<Formula> sentences;

  /// Throws if any member has a free variable.
  static Theory of(std::vector<Formula> sentences);
};

/// Rate schedules m -> min(scale * 2^-(m+shift), 1), covering the bounds
/// used by the Cauchy checks and the convergence-forcing transform.
class RateSchedule {
 public:
  static RateSchedule exponential() { return {Rational(1), 0}; }      // 2^-m
  static RateSchedule lemma_step() { return {Rational(1), 1}; }       // 2^-(m+1)
  static RateSchedule stability_step() { return {Rational(3), 0}; }   // 3 * 2^-m

  RateSchedule(Rational scale, int shift) : scale_(std::move(scale)), shift_(shift) {}

  Rational at(int m) const;

  /// Geometric tail bound sum_{j>=m} at(j) = 2 * at(m), capped at 1.
  RateSchedule tail() const { return {scale_, shift_ - 1}; }

  const Rational& scale() const { return scale_; }
  int shift() const { return shift_; }
  friend bool operator==(const RateSchedule&, const RateSchedule&) = default;

 private:
  Rational scale_;
  int shift_;
};

/// An ordered list of formulas sharing a declared free-variable frame,
/// with a claimed convergence schedule (default 2^-m).
struct FormulaSequence {
  std::vector<std::string> frame;
  std::vector<Formula> entries;
  RateSchedule schedule = RateSchedule::exponential();

  /// Throws if some entry has a free variable outside the frame.
  void validate_frame() const;
};

}  // namespace cml

#endif
