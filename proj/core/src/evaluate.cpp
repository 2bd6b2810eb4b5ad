#include "cml/evaluate.hpp"

namespace cml {

Assignment assignment_from_labels(const GeneralStructure& m,
                                  const std::map<std::string, std::string>& labels) {
  Assignment a;
  for (const auto& [var, label] : labels) a.emplace(var, m.element(label));
  return a;
}

int Evaluator::eval_term(const Term& t, const Env& env) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto v = env.lookup(t.name());
      if (!v) throw EvalError("unbound free variable: " + t.name());
      return *v;
    }
    case Term::Kind::Constant: {
      auto idx = m_->vocab().constant_index(t.name());
      if (!idx) throw EvalError("unknown constant symbol: " + t.name());
      return m_->constant_value(*idx);
    }
    case Term::Kind::Element:
      return m_->element(t.name());
    case Term::Kind::Apply: {
      auto idx = m_->vocab().function_index(t.name());
      if (!idx) throw EvalError("unknown function symbol: " + t.name());
      std::vector<int> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(eval_term(a, env));
      return m_->fun_value(*idx, args);
    }
  }
  throw EvalError("unreachable term kind");
}

TruthValue Evaluator::eval_rec(const Formula& f, Env& env) {
  // Memoize quantifier and tall connective nodes; atoms are cheap lookups.
  const bool memoize = f.is_quantifier() || (f.kind() == Formula::Kind::Conn && f.height() >= 3);
  std::vector<int> key;
  std::map<std::vector<int>, TruthValue>* slot = nullptr;
  if (memoize) {
    key.reserve(f.free_vars().size());
    for (const std::string& v : f.free_vars()) {
      auto e = env.lookup(v);
      if (!e) throw EvalError("unbound free variable: " + v);
      key.push_back(*e);
    }
    slot = &memo_[f.id()];
    if (auto it = slot->find(key); it != slot->end()) return it->second;
  }

  TruthValue result;
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      auto idx = m_->vocab().predicate_index(f.symbol());
      if (!idx) throw EvalError("unknown predicate symbol: " + f.symbol());
      std::vector<int> tuple;
      tuple.reserve(f.terms().size());
      for (const Term& t : f.terms()) tuple.push_back(eval_term(t, env));
      result = m_->pred_value(*idx, tuple);
      break;
    }
    case Formula::Kind::Conn: {
      std::vector<TruthValue> vals;
      vals.reserve(f.args().size());
      for (const Formula& a : f.args()) vals.push_back(eval_rec(a, env));
      result = f.conn().apply(vals);
      break;
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf: {
      const bool is_sup = f.kind() == Formula::Kind::Sup;
      env.stack.emplace_back(f.symbol(), 0);
      result = is_sup ? TruthValue::zero() : TruthValue::one();
      for (int e = 0; e < m_->size(); ++e) {
        env.stack.back().second = e;
        TruthValue v = eval_rec(f.body(), env);
        if (is_sup ? result < v : v < result) result = v;
      }
      env.stack.pop_back();
      break;
    }
  }

  if (slot) slot->emplace(std::move(key), result);
  return result;
}

TruthValue Evaluator::eval(const Formula& f, const Assignment& assignment) {
  Env env;
  for (const std::string& v : f.free_vars()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw EvalError("unbound free variable: " + v);
    if (it->second < 0 || it->second >= m_->size())
      throw EvalError("assignment maps " + v + " outside the universe");
    env.stack.emplace_back(v, it->second);
  }
  return eval_rec(f, env);
}

std::vector<TruthValue> Evaluator::table(const Formula& f, std::span<const std::string> vars) {
  for (const std::string& v : f.free_vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw EvalError("table variables do not cover free variable: " + v);
  std::size_t count = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) count *= m_->size();
  std::vector<TruthValue> out;
  out.reserve(count);
  std::vector<int> tuple(vars.size(), 0);
  Env env;
  for (const std::string& v : vars) env.stack.emplace_back(v, 0);
  for (std::size_t rank = 0; rank < count; ++rank) {
    std::size_t r = rank;
    for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i) {
      tuple[i] = static_cast<int>(r % m_->size());
      r /= m_->size();
    }
    for (std::size_t i = 0; i < vars.size(); ++i) env.stack[i].second = tuple[i];
    out.push_back(eval_rec(f, env));
  }
  return out;
}

TruthValue evaluate(const GeneralStructure& m, const Formula& f, const Assignment& assignment) {
  Evaluator e(m);
  return e.eval(f, assignment);
}

ModelReport is_model(const GeneralStructure& m, const Theory& theory, const Rational& tolerance) {
  Evaluator e(m);
  for (int i = 0; i < static_cast<int>(theory.sentences.size()); ++i) {
    TruthValue v = e.eval(theory.sentences[i]);
    if (v.value() > tolerance) return {false, i, v};
  }
  return {};
}

}  // namespace cml
