#include "cml/formula.hpp"

#include <algorithm>

namespace cml {

// ---------------------------------------------------------------- terms --

Term Term::variable(std::string name) {
  return Term(std::make_shared<Node>(Node{Kind::Variable, std::move(name), {}, 0}));
}
Term Term::constant(std::string name) {
  return Term(std::make_shared<Node>(Node{Kind::Constant, std::move(name), {}, 0}));
}
Term Term::element(std::string label) {
  return Term(std::make_shared<Node>(Node{Kind::Element, std::move(label), {}, 0}));
}
Term Term::apply(std::string function, std::vector<Term> args) {
  if (args.empty()) throw StructuralError("function application with no arguments: " + function);
  int d = 0;
  for (const Term& a : args) d = std::max(d, a.depth());
  return Term(std::make_shared<Node>(Node{Kind::Apply, std::move(function), std::move(args), d + 1}));
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind() == Kind::Variable)
    out.insert(name());
  else
    for (const Term& a : args()) a.collect_variables(out);
}

bool term_equal(const Term& a, const Term& b) {
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!term_equal(a.args()[i], b.args()[i])) return false;
  return true;
}

// ------------------------------------------------------------- formulas --

namespace {
std::vector<std::string> sorted_union(const std::vector<const std::vector<std::string>*>& sets) {
  std::set<std::string> u;
  for (const auto* s : sets) u.insert(s->begin(), s->end());
  return {u.begin(), u.end()};
}
}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> terms) {
  Node n;
  n.kind = Kind::Atomic;
  n.symbol = std::move(predicate);
  n.terms = std::move(terms);
  std::set<std::string> vars;
  for (const Term& t : n.terms) t.collect_variables(vars);
  n.free.assign(vars.begin(), vars.end());
  return Formula(std::make_shared<Node>(std::move(n)));
}

Formula Formula::lift(Connective conn, std::vector<Formula> args) {
  if (static_cast<int>(args.size()) != conn.arity())
    throw StructuralError("connective " + conn.name() + " expects " +
                          std::to_string(conn.arity()) + " arguments, got " +
                          std::to_string(args.size()));
  Node n;
  n.kind = Kind::Conn;
  n.conn = conn;
  n.args = std::move(args);
  std::vector<const std::vector<std::string>*> sets;
  for (const Formula& a : n.args) sets.push_back(&a.free_vars());
  n.free = sorted_union(sets);
  for (const Formula& a : n.args) {
    n.height = std::max(n.height, a.height() + 1);
    n.qdepth = std::max(n.qdepth, a.quantifier_depth());
  }
  return Formula(std::make_shared<Node>(std::move(n)));
}

Formula Formula::constant(Rational r) { return lift(Connective::constant(std::move(r)), {}); }

Formula Formula::sup(std::string variable, Formula body) {
  Node n;
  n.kind = Kind::Sup;
  n.symbol = std::move(variable);
  n.height = body.height() + 1;
  n.qdepth = body.quantifier_depth() + 1;
  for (const std::string& v : body.free_vars())
    if (v != n.symbol) n.free.push_back(v);
  n.args.push_back(std::move(body));
  return Formula(std::make_shared<Node>(std::move(n)));
}

Formula Formula::inf(std::string variable, Formula body) {
  Formula s = sup(std::move(variable), std::move(body));
  Node n = *s.node_;
  n.kind = Kind::Inf;
  return Formula(std::make_shared<Node>(std::move(n)));
}

bool Formula::has_free(const std::string& v) const {
  return std::binary_search(node_->free.begin(), node_->free.end(), v);
}

std::set<std::string> free_vars(const Formula& f) {
  return {f.free_vars().begin(), f.free_vars().end()};
}

// --------------------------------------------------------- substitution --

Term substitute(const Term& t, const std::map<std::string, Term>& binding) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = binding.find(t.name());
      return it == binding.end() ? t : it->second;
    }
    case Term::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(substitute(a, binding));
      return Term::apply(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

namespace {

bool binding_touches(const Formula& f, const std::map<std::string, Term>& binding) {
  for (const auto& [v, t] : binding)
    if (f.has_free(v)) return true;
  return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& forbidden) {
  std::string name = base;
  do name += '\'';
  while (forbidden.count(name));
  return name;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& binding) {
  if (binding.empty() || !binding_touches(f, binding)) return f;
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      std::vector<Term> terms;
      terms.reserve(f.terms().size());
      for (const Term& t : f.terms()) terms.push_back(substitute(t, binding));
      return Formula::atom(f.symbol(), std::move(terms));
    }
    case Formula::Kind::Conn: {
      std::vector<Formula> args;
      args.reserve(f.args().size());
      for (const Formula& a : f.args()) args.push_back(substitute(a, binding));
      return Formula::lift(f.conn(), std::move(args));
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf: {
      const std::string& bound = f.symbol();
      std::map<std::string, Term> inner;
      bool capture = false;
      std::set<std::string> used_in_terms;
      for (const auto& [v, t] : binding) {
        if (v == bound || !f.body().has_free(v)) continue;
        inner.emplace(v, t);
        t.collect_variables(used_in_terms);
      }
      capture = used_in_terms.count(bound) > 0;
      std::string var = bound;
      if (capture) {
        std::set<std::string> forbidden = used_in_terms;
        for (const std::string& v : f.body().free_vars()) forbidden.insert(v);
        for (const auto& [v, t] : inner) forbidden.insert(v);
        var = fresh_name(bound, forbidden);
        inner.emplace(bound, Term::variable(var));
      }
      Formula body = substitute(f.body(), inner);
      return f.kind() == Formula::Kind::Sup ? Formula::sup(var, std::move(body))
                                            : Formula::inf(var, std::move(body));
    }
  }
  throw StructuralError("unreachable formula kind");
}

// ------------------------------------------------------- alpha renaming --

namespace {

struct Normalizer {
  const std::set<std::string>* avoid;
  std::set<std::string> free_names;

  std::string level_name(int level) const {
    // Level k gets the k-th name of v0, v1, ... that collides with neither
    // the avoid set nor any free variable of the whole formula.
    int count = 0;
    for (int i = 0;; ++i) {
      std::string cand = "v" + std::to_string(i);
      if (avoid->count(cand) || free_names.count(cand)) continue;
      if (count == level) return cand;
      ++count;
    }
  }

  Term rename_term(const Term& t, const std::map<std::string, std::string>& env) const {
    switch (t.kind()) {
      case Term::Kind::Variable: {
        auto it = env.find(t.name());
        return it == env.end() ? t : Term::variable(it->second);
      }
      case Term::Kind::Apply: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(rename_term(a, env));
        return Term::apply(t.name(), std::move(args));
      }
      default:
        return t;
    }
  }

  Formula rename(const Formula& f, std::map<std::string, std::string>& env, int level) const {
    switch (f.kind()) {
      case Formula::Kind::Atomic: {
        std::vector<Term> terms;
        terms.reserve(f.terms().size());
        for (const Term& t : f.terms()) terms.push_back(rename_term(t, env));
        return Formula::atom(f.symbol(), std::move(terms));
      }
      case Formula::Kind::Conn: {
        std::vector<Formula> args;
        args.reserve(f.args().size());
        for (const Formula& a : f.args()) args.push_back(rename(a, env, level));
        return Formula::lift(f.conn(), std::move(args));
      }
      case Formula::Kind::Sup:
      case Formula::Kind::Inf: {
        std::string name = level_name(level);
        auto saved = env.find(f.symbol());
        std::optional<std::string> prev;
        if (saved != env.end()) prev = saved->second;
        env[f.symbol()] = name;
        Formula body = rename(f.body(), env, level + 1);
        if (prev)
          env[f.symbol()] = *prev;
        else
          env.erase(f.symbol());
        return f.kind() == Formula::Kind::Sup ? Formula::sup(name, std::move(body))
                                              : Formula::inf(name, std::move(body));
      }
    }
    throw StructuralError("unreachable formula kind");
  }
};

}  // namespace

Formula alpha_normalize(const Formula& f, const std::set<std::string>& avoid) {
  Normalizer n;
  n.avoid = &avoid;
  n.free_names.insert(f.free_vars().begin(), f.free_vars().end());
  std::map<std::string, std::string> env;
  return n.rename(f, env, 0);
}

namespace {

bool alpha_equal_terms(const Term& a, const Term& b, const std::map<std::string, int>& ea,
                       const std::map<std::string, int>& eb) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Term::Kind::Variable) {
    auto ia = ea.find(a.name());
    auto ib = eb.find(b.name());
    if ((ia == ea.end()) != (ib == eb.end())) return false;
    if (ia != ea.end()) return ia->second == ib->second;
    return a.name() == b.name();  // both free
  }
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!alpha_equal_terms(a.args()[i], b.args()[i], ea, eb)) return false;
  return true;
}

bool alpha_equal_rec(const Formula& a, const Formula& b, std::map<std::string, int>& ea,
                     std::map<std::string, int>& eb, int level) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atomic: {
      if (a.symbol() != b.symbol() || a.terms().size() != b.terms().size()) return false;
      for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (!alpha_equal_terms(a.terms()[i], b.terms()[i], ea, eb)) return false;
      return true;
    }
    case Formula::Kind::Conn: {
      if (!(a.conn() == b.conn()) || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_equal_rec(a.args()[i], b.args()[i], ea, eb, level)) return false;
      return true;
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf: {
      auto pa = ea.find(a.symbol());
      auto pb = eb.find(b.symbol());
      std::optional<int> sa, sb;
      if (pa != ea.end()) sa = pa->second;
      if (pb != eb.end()) sb = pb->second;
      ea[a.symbol()] = level;
      eb[b.symbol()] = level;
      bool ok = alpha_equal_rec(a.body(), b.body(), ea, eb, level + 1);
      if (sa)
        ea[a.symbol()] = *sa;
      else
        ea.erase(a.symbol());
      if (sb)
        eb[b.symbol()] = *sb;
      else
        eb.erase(b.symbol());
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, int> ea, eb;
  return alpha_equal_rec(a, b, ea, eb, 0);
}

// ------------------------------------------------------------ validation --

void validate_term(const Term& t, const Vocabulary& vocab) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (vocab.has_symbol(t.name()))
        throw StructuralError("variable name collides with declared symbol: " + t.name());
      return;
    case Term::Kind::Constant:
      if (!vocab.constant_index(t.name()))
        throw StructuralError("unknown constant symbol: " + t.name());
      return;
    case Term::Kind::Element:
      return;  // membership is checked against a concrete universe at evaluation
    case Term::Kind::Apply: {
      auto idx = vocab.function_index(t.name());
      if (!idx) throw StructuralError("unknown function symbol: " + t.name());
      int arity = vocab.functions()[*idx].arity;
      if (arity != static_cast<int>(t.args().size()))
        throw StructuralError("function " + t.name() + " expects " + std::to_string(arity) +
                              " arguments, got " + std::to_string(t.args().size()));
      for (const Term& a : t.args()) validate_term(a, vocab);
      return;
    }
  }
}

void validate_formula(const Formula& f, const Vocabulary& vocab) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      auto idx = vocab.predicate_index(f.symbol());
      if (!idx) throw StructuralError("unknown predicate symbol: " + f.symbol());
      int arity = vocab.predicates()[*idx].arity;
      if (arity != static_cast<int>(f.terms().size()))
        throw StructuralError("predicate " + f.symbol() + " expects " + std::to_string(arity) +
                              " arguments, got " + std::to_string(f.terms().size()));
      for (const Term& t : f.terms()) validate_term(t, vocab);
      return;
    }
    case Formula::Kind::Conn:
      for (const Formula& a : f.args()) validate_formula(a, vocab);
      return;
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      if (vocab.has_symbol(f.symbol()))
        throw StructuralError("bound variable collides with declared symbol: " + f.symbol());
      validate_formula(f.body(), vocab);
      return;
  }
}

Theory Theory::of(std::vector<Formula> sentences) {
  for (const Formula& s : sentences)
    if (!s.free_vars().empty())
      throw StructuralError("theory member has free variables, first: " + s.free_vars().front());
  return Theory{std::move(sentences)};
}

Rational RateSchedule::at(int m) const {
  Rational r = scale_ * pow2(-(m + shift_));
  return r < 1 ? r : Rational(1);
}

void FormulaSequence::validate_frame() const {
  std::set<std::string> frame_set(frame.begin(), frame.end());
  for (const Formula& e : entries)
    for (const std::string& v : e.free_vars())
      if (!frame_set.count(v))
        throw StructuralError("sequence entry has free variable outside the frame: " + v);
}

}  // namespace cml
