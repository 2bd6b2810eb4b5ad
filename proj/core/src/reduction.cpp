#include "cml/reduction.hpp"

#include <map>

#include "cml/textio.hpp"

namespace cml {

namespace {

// Refines classes by a per-element key; returns true if anything split.
template <class Key>
bool refine_by(std::vector<int>& classes, const std::vector<Key>& keys) {
  std::map<std::pair<int, Key>, int> renumber;
  std::vector<int> next(classes.size());
  for (std::size_t e = 0; e < classes.size(); ++e) {
    auto probe = renumber.emplace(std::make_pair(classes[e], keys[e]),
                                  static_cast<int>(renumber.size()));
    next[e] = probe.first->second;
  }
  bool changed = renumber.size() != static_cast<std::size_t>(
                     1 + *std::max_element(classes.begin(), classes.end()));
  classes = std::move(next);
  return changed;
}

}  // namespace

Partition leibniz_partition(const GeneralStructure& m) {
  const int n = m.size();
  const Vocabulary& vocab = m.vocab();
  std::vector<int> classes(n, 0);

  // Predicate one-position signatures are independent of the partition:
  // element a's key lists P(c1..a..ck) over every predicate, position, and
  // concrete context tuple.
  {
    std::vector<std::vector<Rational>> keys(n);
    for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
      int k = vocab.predicates()[p].arity;
      std::size_t contexts = 1;
      for (int i = 0; i < k - 1; ++i) contexts *= n;
      std::vector<int> tuple(k);
      for (int pos = 0; pos < k; ++pos) {
        for (std::size_t c = 0; c < contexts; ++c) {
          std::size_t rest = c;
          for (int i = k - 1; i >= 0; --i) {
            if (i == pos) continue;
            tuple[i] = static_cast<int>(rest % n);
            rest /= n;
          }
          for (int a = 0; a < n; ++a) {
            tuple[pos] = a;
            keys[a].push_back(m.pred_value(static_cast<int>(p), tuple).value());
          }
        }
      }
    }
    refine_by(classes, keys);
  }

  // Function one-position congruence refinement to a fixpoint.
  if (!vocab.functions().empty()) {
    bool changed = true;
    while (changed) {
      std::vector<std::vector<int>> keys(n);
      for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
        int k = vocab.functions()[f].arity;
        std::size_t contexts = 1;
        for (int i = 0; i < k - 1; ++i) contexts *= n;
        std::vector<int> tuple(k);
        for (int pos = 0; pos < k; ++pos) {
          for (std::size_t c = 0; c < contexts; ++c) {
            std::size_t rest = c;
            for (int i = k - 1; i >= 0; --i) {
              if (i == pos) continue;
              tuple[i] = static_cast<int>(rest % n);
              rest /= n;
            }
            for (int a = 0; a < n; ++a) {
              tuple[pos] = a;
              keys[a].push_back(classes[m.fun_value(static_cast<int>(f), tuple)]);
            }
          }
        }
      }
      changed = refine_by(classes, keys);
    }
  }

  return Partition::from_classes(classes);
}

Reduction reduce(const GeneralStructure& m) {
  Partition part = leibniz_partition(m);
  const Vocabulary& vocab = m.vocab();

  std::vector<std::string> labels;
  std::vector<int> rep;  // block -> representative element
  labels.reserve(part.blocks.size());
  for (const auto& block : part.blocks) {
    rep.push_back(block.front());
    labels.push_back(m.label(block.front()));
  }

  GeneralStructure q(vocab, labels);
  const int bn = static_cast<int>(part.blocks.size());

  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    int k = vocab.predicates()[p].arity;
    std::size_t count = q.table_size(k);
    std::vector<int> reps(k);
    for (std::size_t rank = 0; rank < count; ++rank) {
      auto tuple = q.tuple_unrank(rank, k);
      for (int i = 0; i < k; ++i) reps[i] = rep[tuple[i]];
      q.set_pred_value_at(static_cast<int>(p), rank, m.pred_value(static_cast<int>(p), reps));
    }
  }
  for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
    int k = vocab.functions()[f].arity;
    std::size_t count = q.table_size(k);
    std::vector<int> reps(k);
    for (std::size_t rank = 0; rank < count; ++rank) {
      auto tuple = q.tuple_unrank(rank, k);
      for (int i = 0; i < k; ++i) reps[i] = rep[tuple[i]];
      q.set_fun_value_at(static_cast<int>(f), rank,
                         part.block_of[m.fun_value(static_cast<int>(f), reps)]);
    }
  }
  for (std::size_t c = 0; c < vocab.constants().size(); ++c)
    q.set_constant(static_cast<int>(c), part.block_of[m.constant_value(static_cast<int>(c))]);

  (void)bn;
  return Reduction{std::move(q), std::move(part)};
}

EmbeddingReport is_embedding(const std::vector<int>& h, const GeneralStructure& m,
                             const GeneralStructure& n, int depth_budget,
                             std::size_t max_formulas) {
  if (static_cast<int>(h.size()) != m.size())
    throw StructuralError("embedding map must be total on the domain universe");
  for (int e : h)
    if (e < 0 || e >= n.size())
      throw StructuralError("embedding map leaves the codomain universe");
  if (!(m.vocab() == n.vocab())) throw StructuralError("vocabulary mismatch");

  EmbeddingReport report;
  const Vocabulary& vocab = m.vocab();

  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    int ci = static_cast<int>(c);
    if (h[m.constant_value(ci)] != n.constant_value(ci)) {
      report.embedding = false;
      report.failure = "constant " + vocab.constants()[c] + " not preserved";
      return report;
    }
  }
  std::vector<int> image;
  for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
    int fi = static_cast<int>(f);
    int k = vocab.functions()[f].arity;
    for (std::size_t rank = 0; rank < m.table_size(k); ++rank) {
      auto tuple = m.tuple_unrank(rank, k);
      image.assign(tuple.size(), 0);
      for (int i = 0; i < k; ++i) image[i] = h[tuple[i]];
      if (h[m.fun_value_at(fi, rank)] != n.fun_value(fi, image)) {
        report.embedding = false;
        report.failure = "function " + vocab.functions()[f].name + " not preserved";
        return report;
      }
    }
  }
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    int pi = static_cast<int>(p);
    int k = vocab.predicates()[p].arity;
    for (std::size_t rank = 0; rank < m.table_size(k); ++rank) {
      auto tuple = m.tuple_unrank(rank, k);
      image.assign(tuple.size(), 0);
      for (int i = 0; i < k; ++i) image[i] = h[tuple[i]];
      if (!(m.pred_value_at(pi, rank) == n.pred_value(pi, image))) {
        report.embedding = false;
        report.failure = "predicate " + vocab.predicates()[p].name + " not preserved";
        return report;
      }
    }
  }

  // Bounded elementary check over the canonical family.
  FamilyOptions opts;
  opts.max_height = depth_budget;
  opts.max_count = max_formulas;
  std::vector<Formula> family = generate_family(vocab, opts);
  report.formulas_checked = family.size();
  Evaluator em(m), en(n);
  for (const Formula& f : family) {
    const auto& vars = f.free_vars();
    std::size_t count = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) count *= m.size();
    for (std::size_t rank = 0; rank < count; ++rank) {
      Assignment am, an;
      std::size_t r = rank;
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        int e = static_cast<int>(r % m.size());
        r /= m.size();
        am[*it] = e;
        an[*it] = h[e];
      }
      if (!(em.eval(f, am) == en.eval(f, an))) {
        report.elementary = false;
        report.elementary_witness = f;
        return report;
      }
    }
  }
  return report;
}

DistinguishResult distinguish(const GeneralStructure& m, const GeneralStructure& n,
                              int depth_budget, std::size_t max_sentences) {
  if (!(m.vocab() == n.vocab())) throw StructuralError("vocabulary mismatch");
  FamilyOptions opts;
  opts.max_height = depth_budget;
  opts.max_count = max_sentences;
  std::vector<Formula> sentences = generate_sentence_family(m.vocab(), opts);

  DistinguishResult result;
  result.sentences_checked = sentences.size();
  Evaluator em(m), en(n);
  Rational best(0);
  for (const Formula& s : sentences) {
    Rational gap = tv_gap(em.eval(s), en.eval(s));
    if (gap > best) {
      best = gap;
      result.witness = s;
      result.gap = TruthValue(gap);
    }
  }
  return result;
}

}  // namespace cml
