#include "cml/ultra.hpp"

#include <algorithm>

namespace cml {

bool Ultrafilter::contains(std::span<const int> subset) const {
  return std::find(subset.begin(), subset.end(), principal_at) != subset.end();
}

std::vector<Ultrafilter> Ultrafilter::enumerate(int n) {
  if (n < 1) throw StructuralError("index set must be non-empty");
  std::vector<Ultrafilter> all;
  all.reserve(n);
  for (int i = 0; i < n; ++i) all.push_back({n, i});
  return all;
}

TruthValue ulim(const Ultrafilter& d, std::span<const TruthValue> values) {
  if (static_cast<int>(values.size()) != d.index_size)
    throw StructuralError("ulim needs a value for every index");
  return values[d.principal_at];
}

namespace {

std::string tuple_label(std::span<const GeneralStructure> factors, std::span<const int> coords) {
  std::string label = "⟨";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) label += ',';
    label += factors[i].label(coords[i]);
  }
  label += "⟩";
  return label;
}

}  // namespace

GeneralStructure pre_ultraproduct(std::span<const GeneralStructure> factors,
                                  const Ultrafilter& d) {
  if (factors.empty()) throw StructuralError("empty family");
  if (static_cast<int>(factors.size()) != d.index_size)
    throw StructuralError("ultrafilter index size does not match the family");
  const Vocabulary& vocab = factors[0].vocab();
  for (const GeneralStructure& f : factors)
    if (!(f.vocab() == vocab)) throw StructuralError("vocabulary mismatch across the family");

  const std::size_t nfac = factors.size();
  std::size_t universe_size = 1;
  for (const GeneralStructure& f : factors) universe_size *= f.size();

  // Element rank: mixed radix, first factor most significant.
  auto coords_of = [&](std::size_t rank) {
    std::vector<int> coords(nfac);
    for (std::size_t i = nfac; i-- > 0;) {
      coords[i] = static_cast<int>(rank % factors[i].size());
      rank /= factors[i].size();
    }
    return coords;
  };
  auto rank_of = [&](std::span<const int> coords) {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < nfac; ++i)
      rank = rank * factors[i].size() + static_cast<std::size_t>(coords[i]);
    return rank;
  };

  std::vector<std::string> labels;
  labels.reserve(universe_size);
  for (std::size_t r = 0; r < universe_size; ++r)
    labels.push_back(tuple_label(factors, coords_of(r)));

  GeneralStructure m(vocab, labels);

  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    std::vector<int> coords(nfac);
    for (std::size_t i = 0; i < nfac; ++i) coords[i] = factors[i].constant_value(static_cast<int>(c));
    m.set_constant(static_cast<int>(c), static_cast<int>(rank_of(coords)));
  }

  for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
    int k = vocab.functions()[f].arity;
    std::vector<int> factor_tuple(k), image(nfac);
    for (std::size_t rank = 0; rank < m.table_size(k); ++rank) {
      auto tuple = m.tuple_unrank(rank, k);
      std::vector<std::vector<int>> arg_coords(k);
      for (int i = 0; i < k; ++i) arg_coords[i] = coords_of(tuple[i]);
      for (std::size_t i = 0; i < nfac; ++i) {
        for (int j = 0; j < k; ++j) factor_tuple[j] = arg_coords[j][i];
        image[i] = factors[i].fun_value(static_cast<int>(f), factor_tuple);
      }
      m.set_fun_value_at(static_cast<int>(f), rank, static_cast<int>(rank_of(image)));
    }
  }

  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    int k = vocab.predicates()[p].arity;
    std::vector<int> factor_tuple(k);
    std::vector<TruthValue> values(nfac);
    for (std::size_t rank = 0; rank < m.table_size(k); ++rank) {
      auto tuple = m.tuple_unrank(rank, k);
      std::vector<std::vector<int>> arg_coords(k);
      for (int i = 0; i < k; ++i) arg_coords[i] = coords_of(tuple[i]);
      for (std::size_t i = 0; i < nfac; ++i) {
        for (int j = 0; j < k; ++j) factor_tuple[j] = arg_coords[j][i];
        values[i] = factors[i].pred_value(static_cast<int>(p), factor_tuple);
      }
      m.set_pred_value_at(static_cast<int>(p), rank, ulim(d, values));
    }
  }

  return m;
}

int Ultraproduct::pre_index(std::span<const int> coords) const {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < factor_sizes.size(); ++i)
    rank = rank * factor_sizes[i] + static_cast<std::size_t>(coords[i]);
  return static_cast<int>(rank);
}

std::vector<int> Ultraproduct::coords_of(int pre_element) const {
  std::vector<int> coords(factor_sizes.size());
  std::size_t rank = static_cast<std::size_t>(pre_element);
  for (std::size_t i = factor_sizes.size(); i-- > 0;) {
    coords[i] = static_cast<int>(rank % factor_sizes[i]);
    rank /= factor_sizes[i];
  }
  return coords;
}

Ultraproduct ultraproduct(std::span<const GeneralStructure> factors, const Ultrafilter& d) {
  Ultraproduct up{pre_ultraproduct(factors, d), {}, {}};
  up.reduction = reduce(up.pre);
  for (const GeneralStructure& f : factors) up.factor_sizes.push_back(f.size());
  return up;
}

LosReport check_los(std::span<const GeneralStructure> factors, const Ultrafilter& d,
                    std::span<const Formula> formulas) {
  Ultraproduct up = ultraproduct(factors, d);
  return check_los_on(up, factors, d, formulas);
}

LosReport check_los_on(const Ultraproduct& up, std::span<const GeneralStructure> factors,
                       const Ultrafilter& d, std::span<const Formula> formulas) {
  LosReport report;
  report.formulas_checked = formulas.size();

  const std::size_t nfac = factors.size();
  const std::size_t pre_size = up.pre.size();
  Evaluator reduced_eval(up.reduced());

  for (std::size_t fi = 0; fi < formulas.size(); ++fi) {
    const Formula& phi = formulas[fi];
    validate_formula(phi, up.pre.vocab());
    const std::vector<std::string>& vars = phi.free_vars();
    const std::size_t k = vars.size();

    std::vector<TruthValue> reduced_table = reduced_eval.table(phi, vars);
    std::vector<std::vector<TruthValue>> factor_tables;
    factor_tables.reserve(nfac);
    {
      for (std::size_t i = 0; i < nfac; ++i) {
        Evaluator fe(factors[i]);
        factor_tables.push_back(fe.table(phi, vars));
      }
    }

    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= pre_size;

    std::vector<int> tuple(k);
    std::vector<std::vector<int>> coords(k);
    std::vector<TruthValue> limit_values(nfac);
    for (std::size_t rank = 0; rank < count; ++rank) {
      std::size_t r = rank;
      for (std::size_t i = k; i-- > 0;) {
        tuple[i] = static_cast<int>(r % pre_size);
        r /= pre_size;
      }
      for (std::size_t i = 0; i < k; ++i) coords[i] = up.coords_of(tuple[i]);

      // Left side: value in the reduced ultraproduct at the quotient tuple.
      std::size_t reduced_rank = 0;
      for (std::size_t i = 0; i < k; ++i)
        reduced_rank = reduced_rank * up.reduced().size() +
                       static_cast<std::size_t>(up.class_of(tuple[i]));
      const TruthValue& lhs = reduced_table[reduced_rank];

      // Right side: ultrafilter limit of the factor values.
      for (std::size_t i = 0; i < nfac; ++i) {
        std::size_t factor_rank = 0;
        for (std::size_t j = 0; j < k; ++j)
          factor_rank = factor_rank * factors[i].size() +
                        static_cast<std::size_t>(coords[j][i]);
        limit_values[i] = factor_tables[i][factor_rank];
      }
      TruthValue rhs = ulim(d, limit_values);

      ++report.tuples_checked;
      if (!(lhs == rhs)) {
        report.pass = false;
        LosViolation v;
        v.formula_index = fi;
        for (std::size_t i = 0; i < k; ++i) v.tuple_labels.push_back(up.pre.label(tuple[i]));
        v.product_value = lhs;
        v.limit_value = rhs;
        report.first_violation = std::move(v);
        return report;
      }
    }
  }
  return report;
}

}  // namespace cml
