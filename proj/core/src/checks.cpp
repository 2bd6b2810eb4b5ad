#include "cml/checks.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "cml/family.hpp"

namespace cml {

DistanceTable DistanceTable::from_formula(const GeneralStructure& m, const Formula& d,
                                          const std::string& var_x, const std::string& var_y) {
  for (const std::string& v : d.free_vars())
    if (v != var_x && v != var_y)
      throw StructuralError("distance formula has unexpected free variable: " + v);
  Evaluator e(m);
  std::array<std::string, 2> vars{var_x, var_y};
  return DistanceTable{m.size(), e.table(d, vars)};
}

DistanceTable DistanceTable::from_distance(const GeneralStructure& m,
                                           const ApproximateDistance& ad) {
  return DistanceTable{m.size(), distance_table(m, ad)};
}

DistanceTable DistanceTable::from_predicate(const GeneralStructure& m, const std::string& pred) {
  auto idx = m.vocab().predicate_index(pred);
  if (!idx) throw StructuralError("unknown predicate symbol: " + pred);
  if (m.vocab().predicates()[*idx].arity != 2)
    throw StructuralError("distance predicate must be binary: " + pred);
  DistanceTable t;
  t.n = m.size();
  t.values.reserve(static_cast<std::size_t>(t.n) * t.n);
  for (std::size_t rank = 0; rank < m.table_size(2); ++rank)
    t.values.push_back(m.pred_value_at(*idx, rank));
  return t;
}

PseudometricReport check_pseudometric(const GeneralStructure& m, const DistanceTable& d) {
  PseudometricReport r;
  const int n = m.size();
  for (int a = 0; a < n; ++a)
    if (!(d.at(a, a) == TruthValue::zero())) {
      r.pass = false;
      r.kind = PseudometricReport::Violation::Reflexivity;
      r.a = a;
      r.lhs = d.at(a, a);
      return r;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!(d.at(a, b) == d.at(b, a))) {
        r.pass = false;
        r.kind = PseudometricReport::Violation::Symmetry;
        r.a = a;
        r.b = b;
        r.lhs = d.at(a, b);
        r.rhs = d.at(b, a);
        return r;
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Rational bound = d.at(a, b).value() + d.at(b, c).value();
        if (d.at(a, c).value() > bound) {
          r.pass = false;
          r.kind = PseudometricReport::Violation::Triangle;
          r.a = a;
          r.b = b;
          r.c = c;
          r.lhs = d.at(a, c);
          r.rhs = TruthValue(bound < 1 ? bound : Rational(1));
          return r;
        }
      }
  return r;
}

ModulusReport check_modulus(const GeneralStructure& m, int pred, const Rational& coefficient,
                            const DistanceTable& d) {
  ModulusReport r;
  const int k = m.vocab().predicates()[pred].arity;
  const std::size_t count = m.table_size(k);
  Rational worst_excess(-1);
  for (std::size_t sr = 0; sr < count; ++sr) {
    auto s = m.tuple_unrank(sr, k);
    for (std::size_t tr = 0; tr < count; ++tr) {
      auto t = m.tuple_unrank(tr, k);
      Rational maxd(0);
      for (int i = 0; i < k; ++i) {
        const Rational& di = d.at(s[i], t[i]).value();
        if (di > maxd) maxd = di;
      }
      Rational gap = tv_gap(m.pred_value_at(pred, sr), m.pred_value_at(pred, tr));
      Rational bound = coefficient * maxd;
      Rational excess = gap - bound;
      if (excess > worst_excess) {
        worst_excess = excess;
        r.worst_gap = gap;
        r.worst_bound = bound;
        r.witness_left = s;
        r.witness_right = t;
      }
      if (gap > bound && r.pass) {
        r.pass = false;
        r.worst_gap = gap;
        r.worst_bound = bound;
        r.witness_left = s;
        r.witness_right = t;
        return r;
      }
    }
  }
  return r;
}

ModulusReport check_modulus_grid(const GeneralStructure& m, int pred, const Rational& coefficient,
                                 const DistanceTable& d, int grid_log2) {
  ModulusReport r;
  const int k = m.vocab().predicates()[pred].arity;
  const std::size_t count = m.table_size(k);
  const int points = 1 << grid_log2;
  for (int j = 1; j <= points; ++j) {
    Rational eps = Rational(j) / points;
    // Moduli map (0,1] into (0,1], so the threshold caps at 1.
    Rational delta = eps / coefficient;
    if (delta > 1) delta = 1;
    for (std::size_t sr = 0; sr < count; ++sr) {
      auto s = m.tuple_unrank(sr, k);
      for (std::size_t tr = 0; tr < count; ++tr) {
        auto t = m.tuple_unrank(tr, k);
        Rational maxd(0);
        for (int i = 0; i < k; ++i) {
          const Rational& di = d.at(s[i], t[i]).value();
          if (di > maxd) maxd = di;
        }
        if (maxd < delta) {
          Rational gap = tv_gap(m.pred_value_at(pred, sr), m.pred_value_at(pred, tr));
          if (gap > eps) {
            r.pass = false;
            r.worst_gap = gap;
            r.worst_bound = eps;
            r.witness_left = s;
            r.witness_right = t;
            return r;
          }
        }
      }
    }
  }
  return r;
}

namespace {

Formula max_chain(std::vector<Formula> parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = Formula::lift(Connective::max(), {out, parts[i]});
  return out;
}

}  // namespace

MetAxioms met_axioms(const Vocabulary& base, const MetricSignature& sig, int grid_log2) {
  MetAxioms out;
  out.vocab = base.with_distance_symbol(sig.distance_symbol);
  const std::string& D = sig.distance_symbol;
  const std::string x = fresh_variable(out.vocab, "x");
  const std::string y = fresh_variable(out.vocab, "y");
  const std::string z = fresh_variable(out.vocab, "z");

  auto dist = [&](const std::string& a, const std::string& b) {
    return Formula::atom(D, {Term::variable(a), Term::variable(b)});
  };

  std::vector<Formula> sentences;
  // d(x,x) = 0
  sentences.push_back(Formula::sup(x, dist(x, x)));
  // symmetry
  sentences.push_back(Formula::sup(
      x, Formula::sup(y, Formula::lift(Connective::absdiff(), {dist(x, y), dist(y, x)}))));
  // triangle
  sentences.push_back(Formula::sup(
      x, Formula::sup(
             y, Formula::sup(z, Formula::lift(Connective::dotminus(),
                                              {dist(x, z), Formula::lift(Connective::dotplus(),
                                                                         {dist(x, y), dist(y, z)})})))));
  out.schemata = 3;

  const int points = 1 << grid_log2;
  for (const auto& [symbol, coeff] : sig.moduli) {
    auto pidx = out.vocab.predicate_index(symbol);
    auto fidx = out.vocab.function_index(symbol);
    int k = 0;
    if (pidx)
      k = out.vocab.predicates()[*pidx].arity;
    else if (fidx)
      k = out.vocab.functions()[*fidx].arity;
    else
      throw StructuralError("modulus for undeclared symbol: " + symbol);

    std::vector<std::string> us, ws;
    for (int i = 1; i <= k; ++i) {
      us.push_back(fresh_variable(out.vocab, "u" + std::to_string(i)));
      ws.push_back(fresh_variable(out.vocab, "w" + std::to_string(i)));
    }

    std::vector<Formula> dparts;
    for (int i = 0; i < k; ++i) dparts.push_back(dist(us[i], ws[i]));
    Formula maxd = max_chain(std::move(dparts));

    Formula gap = [&] {
      if (pidx) {
        std::vector<Term> left, right;
        for (int i = 0; i < k; ++i) left.push_back(Term::variable(us[i]));
        for (int i = 0; i < k; ++i) right.push_back(Term::variable(ws[i]));
        return Formula::lift(Connective::absdiff(), {Formula::atom(symbol, std::move(left)),
                                                     Formula::atom(symbol, std::move(right))});
      }
      std::vector<Term> left, right;
      for (int i = 0; i < k; ++i) left.push_back(Term::variable(us[i]));
      for (int i = 0; i < k; ++i) right.push_back(Term::variable(ws[i]));
      return Formula::atom(D, {Term::apply(symbol, std::move(left)),
                               Term::apply(symbol, std::move(right))});
    }();

    for (int j = 1; j <= points; ++j) {
      Rational eps = Rational(j) / points;
      Rational delta = eps / coeff;
      if (delta > 1) delta = 1;
      // 0 iff at every pair: max_i d >= delta or gap <= eps.
      Formula body = Formula::lift(
          Connective::min(),
          {Formula::lift(Connective::dotminus(), {Formula::constant(delta), maxd}),
           Formula::lift(Connective::dotminus(), {gap, Formula::constant(eps)})});
      for (int i = k - 1; i >= 0; --i) body = Formula::sup(ws[i], body);
      for (int i = k - 1; i >= 0; --i) body = Formula::sup(us[i], body);
      sentences.push_back(body);
    }
    out.schemata += 1;
  }

  out.theory = Theory::of(std::move(sentences));
  return out;
}

GeneralStructure with_distance(const GeneralStructure& m, const DistanceTable& d,
                               const std::string& symbol) {
  GeneralStructure out(m.vocab().with_distance_symbol(symbol), m.universe());
  const Vocabulary& vocab = m.vocab();
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p)
    for (std::size_t rank = 0; rank < m.table_size(vocab.predicates()[p].arity); ++rank)
      out.set_pred_value_at(static_cast<int>(p), rank, m.pred_value_at(static_cast<int>(p), rank));
  int dsym = static_cast<int>(vocab.predicates().size());
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      out.set_pred_value_at(dsym, static_cast<std::size_t>(a) * m.size() + b, d.at(a, b));
  for (std::size_t f = 0; f < vocab.functions().size(); ++f)
    for (std::size_t rank = 0; rank < m.table_size(vocab.functions()[f].arity); ++rank)
      out.set_fun_value_at(static_cast<int>(f), rank, m.fun_value_at(static_cast<int>(f), rank));
  for (std::size_t c = 0; c < vocab.constants().size(); ++c)
    out.set_constant(static_cast<int>(c), m.constant_value(static_cast<int>(c)));
  return out;
}

UniformEquivalenceReport check_uniform_equivalence(const GeneralStructure& m,
                                                   const DistanceTable& d1,
                                                   const DistanceTable& d2) {
  UniformEquivalenceReport r;
  const int n = m.size();
  for (int a = 0; a < n && r.zero_sets_equal; ++a)
    for (int b = 0; b < n; ++b) {
      bool z1 = d1.at(a, b) == TruthValue::zero();
      bool z2 = d2.at(a, b) == TruthValue::zero();
      if (z1 != z2) {
        r.zero_sets_equal = false;
        r.witness_a = a;
        r.witness_b = b;
        break;
      }
    }

  auto empirical = [&](const DistanceTable& from, const DistanceTable& to) {
    std::set<Rational> levels;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) levels.insert(from.at(a, b).value());
    std::vector<std::pair<Rational, Rational>> table;
    for (const Rational& v : levels) {
      Rational worst(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (from.at(a, b).value() <= v && to.at(a, b).value() > worst)
            worst = to.at(a, b).value();
      table.emplace_back(v, worst);
    }
    return table;
  };
  r.table_12 = empirical(d1, d2);
  r.table_21 = empirical(d2, d1);
  return r;
}

CauchyReport check_cauchy(const FormulaSequence& seq,
                          std::span<const GeneralStructure> witnesses) {
  seq.validate_frame();
  CauchyReport r;
  Rational worst_excess;
  bool have_worst = false;

  const std::size_t len = seq.entries.size();
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    const GeneralStructure& m = witnesses[w];
    for (const Formula& e : seq.entries) validate_formula(e, m.vocab());
    Evaluator eval(m);
    std::vector<std::vector<TruthValue>> tables;
    tables.reserve(len);
    for (const Formula& e : seq.entries) tables.push_back(eval.table(e, seq.frame));

    std::size_t count = 1;
    for (std::size_t i = 0; i < seq.frame.size(); ++i) count *= m.size();

    for (std::size_t mi = 0; mi < len; ++mi) {
      Rational bound = seq.schedule.at(static_cast<int>(mi));
      for (std::size_t ki = mi + 1; ki < len; ++ki) {
        for (std::size_t rank = 0; rank < count; ++rank) {
          Rational gap = tv_gap(tables[mi][rank], tables[ki][rank]);
          Rational excess = gap - bound;
          if (!have_worst || excess > worst_excess) {
            have_worst = true;
            worst_excess = excess;
            r.worst_m = static_cast<int>(mi);
            r.worst_k = static_cast<int>(ki);
            r.worst_gap = gap;
            r.worst_bound = bound;
            r.witness_structure = static_cast<int>(w);
            r.witness_assignment.clear();
            std::size_t rest = rank;
            for (std::size_t i = seq.frame.size(); i-- > 0;) {
              r.witness_assignment[seq.frame[i]] = m.label(static_cast<int>(rest % m.size()));
              rest /= m.size();
            }
          }
          if (gap > bound) r.pass = false;
        }
      }
    }
  }
  return r;
}

Rational modulus_coefficient(const Formula& f, const MetricSignature& sig,
                             const Vocabulary& vocab) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      // Distance atoms are 1-Lipschitz in each argument, so coefficient 2
      // in the max form; other predicates use their signature coefficient.
      Rational cp = f.symbol() == sig.distance_symbol ? Rational(2) : sig.coefficient(f.symbol());
      Rational arg_worst(0);
      for (const Term& t : f.terms()) {
        // Term coefficient: variables move 1:1, constants and literals not
        // at all, function applications compose multiplicatively.
        struct TermCoeff {
          const MetricSignature& sig;
          Rational run(const Term& t) const {
            switch (t.kind()) {
              case Term::Kind::Variable: return Rational(1);
              case Term::Kind::Constant:
              case Term::Kind::Element: return Rational(0);
              case Term::Kind::Apply: {
                Rational worst(0);
                for (const Term& a : t.args()) {
                  Rational c = run(a);
                  if (c > worst) worst = c;
                }
                return sig.coefficient(t.name()) * worst;
              }
            }
            return Rational(0);
          }
        } tc{sig};
        Rational c = tc.run(t);
        if (c > arg_worst) arg_worst = c;
      }
      (void)vocab;
      return cp * arg_worst;
    }
    case Formula::Kind::Conn: {
      Rational worst(0);
      for (const Formula& a : f.args()) {
        Rational c = modulus_coefficient(a, sig, vocab);
        if (c > worst) worst = c;
      }
      return f.conn().lipschitz_constant() * worst;
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      return modulus_coefficient(f.body(), sig, vocab);
  }
  return Rational(0);
}

}  // namespace cml
