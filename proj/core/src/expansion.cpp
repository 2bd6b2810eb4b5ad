#include "cml/expansion.hpp"

#include <algorithm>
#include <array>

#include "cml/family.hpp"

namespace cml {

int AtomicPattern::z_count() const {
  int z = 0;
  for (int s : slots) z = std::max(z, s);
  return z;
}

std::string AtomicPattern::display(const Vocabulary& vocab) const {
  std::string out = vocab.predicates()[pred].name + "(";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) out += ',';
    out += slots[i] == 0 ? "u" : "z" + std::to_string(slots[i]);
  }
  out += ')';
  return out;
}

std::vector<AtomicPattern> enumerate_patterns(const Vocabulary& vocab) {
  if (!vocab.relational())
    throw StructuralError("vocabulary has function symbols; morleyize first");
  std::vector<AtomicPattern> patterns;
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    int k = vocab.predicates()[p].arity;
    std::vector<int> slots(k, 0);
    // Lexicographic enumeration over {u=0, z1=1, ..., zk=k}^k, keeping the
    // canonical tuples (z indices appear in first-occurrence order) that
    // mention u at least once.
    while (true) {
      bool canonical = true, has_u = false;
      int seen = 0;
      for (int s : slots) {
        if (s == 0) {
          has_u = true;
        } else if (s > seen + 1) {
          canonical = false;
          break;
        } else {
          seen = std::max(seen, s);
        }
      }
      if (canonical && has_u) patterns.push_back({static_cast<int>(p), slots});
      int pos = k - 1;
      while (pos >= 0 && ++slots[pos] == k + 1) slots[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return patterns;
}

const Rational& MetricSignature::coefficient(const std::string& symbol) const {
  for (const auto& [name, c] : moduli)
    if (name == symbol) return c;
  throw StructuralError("no modulus coefficient for symbol: " + symbol);
}

namespace {

/// beta_m(x,y) = sup_{z1} ... sup_{zj} |alpha(x,z) - alpha(y,z)| for the
/// pattern's atom alpha.
Formula beta_formula(const AtomicPattern& pat, const Vocabulary& vocab, const std::string& var_x,
                     const std::string& var_y, const std::vector<std::string>& zvars) {
  auto atom_with = [&](const std::string& uvar) {
    std::vector<Term> terms;
    terms.reserve(pat.slots.size());
    for (int s : pat.slots)
      terms.push_back(Term::variable(s == 0 ? uvar : zvars[s - 1]));
    return Formula::atom(vocab.predicates()[pat.pred].name, std::move(terms));
  };
  Formula diff = Formula::lift(Connective::absdiff(), {atom_with(var_x), atom_with(var_y)});
  for (int z = pat.z_count(); z >= 1; --z) diff = Formula::sup(zvars[z - 1], diff);
  return diff;
}

Formula halved(Formula f, int times) {
  for (int i = 0; i < times; ++i) f = Formula::lift(Connective::half(), {f});
  return f;
}

}  // namespace

Synthesis synthesize_distance(const Vocabulary& vocab) {
  Synthesis out;
  out.patterns = enumerate_patterns(vocab);

  const std::string var_x = fresh_variable(vocab, "x");
  const std::string var_y = fresh_variable(vocab, "y");
  int max_arity = 0;
  for (const auto& p : vocab.predicates()) max_arity = std::max(max_arity, p.arity);
  std::vector<std::string> zvars;
  for (int i = 1; i <= max_arity; ++i) zvars.push_back(fresh_variable(vocab, "z" + std::to_string(i)));

  out.distance.var_x = var_x;
  out.distance.var_y = var_y;
  out.sequence.frame = {var_x, var_y};
  out.sequence.schedule = RateSchedule::exponential();

  std::string dsym = "D";
  while (vocab.has_symbol(dsym)) dsym += '_';
  out.signature.distance_symbol = dsym;

  if (out.patterns.empty()) {
    // No predicates: the distance is identically zero.
    out.sequence.entries.push_back(Formula::constant(Rational(0)));
    return out;
  }

  for (std::size_t m = 0; m < out.patterns.size(); ++m) {
    Formula beta = beta_formula(out.patterns[m], vocab, var_x, var_y, zvars);
    out.distance.terms.push_back({pow2(-static_cast<int>(m)), beta});
    Formula weighted = halved(beta, static_cast<int>(m));
    if (m == 0)
      out.sequence.entries.push_back(std::move(weighted));
    else
      out.sequence.entries.push_back(
          Formula::lift(Connective::max(), {out.sequence.entries.back(), std::move(weighted)}));
  }

  // Coefficient per predicate: c_P = 2^m * k where m is the largest index
  // among P's patterns with exactly one u and pairwise distinct z's (the
  // one-position substitution patterns), and k the arity.
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    int k = vocab.predicates()[p].arity;
    int worst = 0;
    for (int pos = 0; pos < k; ++pos) {
      AtomicPattern wanted{static_cast<int>(p), {}};
      wanted.slots.assign(k, 0);
      int z = 0;
      for (int i = 0; i < k; ++i)
        if (i != pos) wanted.slots[i] = ++z;
      auto it = std::find(out.patterns.begin(), out.patterns.end(), wanted);
      worst = std::max(worst, static_cast<int>(it - out.patterns.begin()));
    }
    out.signature.moduli.emplace_back(vocab.predicates()[p].name, pow2(worst) * k);
  }

  return out;
}

TruthValue eval_distance(const GeneralStructure& m, const ApproximateDistance& ad, int a, int b) {
  Evaluator e(m);
  TruthValue best = TruthValue::zero();
  Assignment assign{{ad.var_x, a}, {ad.var_y, b}};
  for (const auto& term : ad.terms) {
    TruthValue weighted(term.weight * e.eval(term.beta, assign).value());
    if (best < weighted) best = weighted;
  }
  return best;
}

std::vector<TruthValue> distance_table(const GeneralStructure& m, const ApproximateDistance& ad) {
  const std::size_t n = m.size();
  std::vector<TruthValue> table(n * n, TruthValue::zero());
  Evaluator e(m);
  std::array<std::string, 2> vars{ad.var_x, ad.var_y};
  for (const auto& term : ad.terms) {
    std::vector<TruthValue> beta = e.table(term.beta, vars);
    for (std::size_t i = 0; i < table.size(); ++i) {
      TruthValue weighted(term.weight * beta[i].value());
      if (table[i] < weighted) table[i] = weighted;
    }
  }
  return table;
}

// --------------------------------------------------------- morleyization --

namespace {

/// Canonical structural key of a term tuple with variables v1..vj numbered
/// by first occurrence; the leaves vector collects the original leaves in
/// first-occurrence order.
struct Abstraction {
  std::vector<Term> pattern;  // canonical terms over v1..vj
  std::vector<Term> leaves;   // original leaf terms, one per v index
  std::string key;
};

std::string leaf_identity(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable: return "v:" + t.name();
    case Term::Kind::Constant: return "c:" + t.name();
    case Term::Kind::Element: return "e:" + t.name();
    default: return "?";
  }
}

Term abstract_term(const Term& t, std::vector<Term>& leaves, std::map<std::string, int>& index,
                   std::string& key) {
  if (t.kind() == Term::Kind::Apply) {
    key += t.name();
    key += '(';
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(abstract_term(a, leaves, index, key));
    key += ')';
    return Term::apply(t.name(), std::move(args));
  }
  auto [it, inserted] = index.emplace(leaf_identity(t), static_cast<int>(leaves.size()) + 1);
  if (inserted) leaves.push_back(t);
  key += 'v' + std::to_string(it->second) + ';';
  return Term::variable("v" + std::to_string(it->second));
}

Abstraction abstract_atom(const std::string& pred, const std::vector<Term>& terms) {
  Abstraction a;
  a.key = pred + ":";
  std::map<std::string, int> index;
  for (const Term& t : terms) a.pattern.push_back(abstract_term(t, a.leaves, index, a.key));
  return a;
}

/// All canonical constant-free atomic patterns of nesting <= depth for one
/// predicate: tuples of terms over fresh variables in first-occurrence
/// order, enumerated left to right.
void enumerate_atom_patterns(const Vocabulary& vocab, int pred, int depth,
                             std::vector<std::vector<Term>>& out) {
  int arity = vocab.predicates()[pred].arity;

  // All terms of nesting <= depth_left over canonically numbered variables,
  // threading the count of variables used so far; each distinct shape is
  // produced exactly once.
  struct Gen {
    const Vocabulary& vocab;
    int depth;
    std::vector<std::pair<Term, int>> terms_with(int used, int depth_left) {
      std::vector<std::pair<Term, int>> out;
      for (int j = 1; j <= used + 1; ++j)
        out.emplace_back(Term::variable("v" + std::to_string(j)), std::max(used, j));
      if (depth_left == 0) return out;
      for (const auto& f : vocab.functions()) {
        std::vector<std::pair<std::vector<Term>, int>> tuples{{{}, used}};
        for (int a = 0; a < f.arity; ++a) {
          std::vector<std::pair<std::vector<Term>, int>> next;
          for (auto& [args, u] : tuples)
            for (auto& [t, u2] : terms_with(u, depth_left - 1)) {
              auto extended = args;
              extended.push_back(t);
              next.emplace_back(std::move(extended), u2);
            }
          tuples = std::move(next);
        }
        for (auto& [args, u] : tuples) out.emplace_back(Term::apply(f.name, args), u);
      }
      return out;
    }
  } gen{vocab, depth};

  std::vector<std::pair<std::vector<Term>, int>> tuples{{{}, 0}};
  for (int i = 0; i < arity; ++i) {
    std::vector<std::pair<std::vector<Term>, int>> next;
    for (auto& [args, used] : tuples)
      for (int d = 0; d <= depth; ++d)
        for (auto& [t, used2] : gen.terms_with(used, d)) {
          if (t.depth() != d) continue;
          auto extended = args;
          extended.push_back(t);
          next.emplace_back(std::move(extended), used2);
        }
    tuples = std::move(next);
  }
  for (auto& [args, used] : tuples) out.push_back(std::move(args));
}

}  // namespace

Morleyization morleyize(const GeneralStructure& m, int depth) {
  if (depth < 1) throw StructuralError("morleyize needs depth >= 1");
  const Vocabulary& vocab = m.vocab();

  Morleyization out;
  out.original_vocab = vocab;
  out.depth = depth;

  // Collect the canonical atoms and name the fresh predicates A0, A1, ...
  std::string prefix = "A";
  auto taken = [&](const std::string& name) { return vocab.constant_index(name).has_value(); };
  std::vector<std::pair<std::string, std::vector<Term>>> atoms;  // (pred name, pattern)
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    std::vector<std::vector<Term>> patterns;
    enumerate_atom_patterns(vocab, static_cast<int>(p), depth, patterns);
    for (auto& pat : patterns) atoms.emplace_back(vocab.predicates()[p].name, std::move(pat));
  }

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::string name = prefix + std::to_string(i);
    while (taken(name)) name += '_';
    std::set<std::string> vars;
    for (const Term& t : atoms[i].second) t.collect_variables(vars);
    out.vocab.add_predicate(name, static_cast<int>(vars.size()));
    Formula origin = Formula::atom(atoms[i].first, atoms[i].second);
    Abstraction abs = abstract_atom(atoms[i].first, atoms[i].second);
    out.pattern_index.emplace(abs.key, static_cast<int>(i));
    out.origins.push_back(std::move(origin));
  }
  for (const std::string& c : vocab.constants()) out.vocab.add_constant(c);

  GeneralStructure translated(out.vocab, m.universe());
  Evaluator eval(m);
  for (std::size_t i = 0; i < out.origins.size(); ++i) {
    const Formula& alpha = out.origins[i];
    // Variables in numeric first-occurrence order v1..vj; the translated
    // argument order must match the table's rank order.
    std::vector<std::string> vars;
    for (int j = 1; j <= out.vocab.predicates()[i].arity; ++j)
      vars.push_back("v" + std::to_string(j));
    std::vector<TruthValue> table = eval.table(alpha, vars);
    for (std::size_t rank = 0; rank < table.size(); ++rank)
      translated.set_pred_value_at(static_cast<int>(i), rank, table[rank]);
  }
  for (std::size_t c = 0; c < vocab.constants().size(); ++c)
    translated.set_constant(static_cast<int>(c), m.constant_value(static_cast<int>(c)));
  out.structure = std::move(translated);
  return out;
}

Formula Morleyization::translate(const Formula& f) const {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      for (const Term& t : f.terms())
        if (t.depth() > depth)
          throw StructuralError("atom nests terms deeper than the morleyization depth " +
                                std::to_string(depth));
      Abstraction abs = abstract_atom(f.symbol(), f.terms());
      auto it = pattern_index.find(abs.key);
      if (it == pattern_index.end())
        throw StructuralError("no morleyized predicate for atom pattern: " + abs.key);
      // The origin's free variables v1..vj are sorted, matching the table
      // construction; leaves are in first-occurrence order v1, v2, ...
      return Formula::atom(vocab.predicates()[it->second].name, abs.leaves);
    }
    case Formula::Kind::Conn: {
      std::vector<Formula> args;
      for (const Formula& a : f.args()) args.push_back(translate(a));
      return Formula::lift(f.conn(), std::move(args));
    }
    case Formula::Kind::Sup:
      return Formula::sup(f.symbol(), translate(f.body()));
    case Formula::Kind::Inf:
      return Formula::inf(f.symbol(), translate(f.body()));
  }
  throw StructuralError("unreachable formula kind");
}

}  // namespace cml
