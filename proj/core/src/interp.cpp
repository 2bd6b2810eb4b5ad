#include "cml/interp.hpp"

#include <map>

#include "cml/family.hpp"

namespace cml {

void validate_classical(const GeneralStructure& k) {
  if (!k.two_valued())
    throw StructuralError("structure is not two-valued (all predicate values must be 0 or 1)");
}

namespace {

/// Satisfaction bitmaps: sat[p][j][tuple rank], true when the tuple
/// satisfies (value 0) the formula.
struct SatTables {
  std::vector<std::vector<std::vector<bool>>> lower, upper;
  std::vector<std::size_t> tuple_counts;
};

SatTables satisfaction_tables(const Interpretation& interp, const GeneralStructure& k) {
  SatTables t;
  Evaluator eval(k);
  const int points = interp.grid_points();
  for (std::size_t p = 0; p < interp.targets.size(); ++p) {
    const int arity = interp.targets[p].arity;
    const auto frame = Interpretation::frame(arity);
    t.tuple_counts.push_back(k.table_size(arity));
    std::vector<std::vector<bool>> lw(points), up(points);
    for (int j = 0; j < points; ++j) {
      std::vector<TruthValue> lv = eval.table(interp.lower[p][j], frame);
      std::vector<TruthValue> uv = eval.table(interp.upper[p][j], frame);
      lw[j].reserve(lv.size());
      up[j].reserve(uv.size());
      for (const TruthValue& v : lv) lw[j].push_back(v == TruthValue::zero());
      for (const TruthValue& v : uv) up[j].push_back(v == TruthValue::zero());
    }
    t.lower.push_back(std::move(lw));
    t.upper.push_back(std::move(up));
  }
  return t;
}

}  // namespace

InterpConditionsReport check_interpretation_conditions(const Interpretation& interp,
                                                       const GeneralStructure& k) {
  validate_classical(k);
  for (std::size_t p = 0; p < interp.targets.size(); ++p)
    for (int j = 0; j < interp.grid_points(); ++j) {
      validate_formula(interp.lower[p][j], k.vocab());
      validate_formula(interp.upper[p][j], k.vocab());
      validate_positive_formula(interp.lower[p][j]);
      validate_positive_formula(interp.upper[p][j]);
    }

  SatTables sat = satisfaction_tables(interp, k);
  InterpConditionsReport report;
  const int points = interp.grid_points();

  for (std::size_t p = 0; p < interp.targets.size(); ++p) {
    const int arity = interp.targets[p].arity;
    for (int jr = 0; jr < points; ++jr) {
      for (int js = jr + 1; js < points; ++js) {
        for (std::size_t rank = 0; rank < sat.tuple_counts[p]; ++rank) {
          char violated = 0;
          if (sat.lower[p][jr][rank] && !sat.lower[p][js][rank])
            violated = 'a';
          else if (sat.upper[p][js][rank] && !sat.upper[p][jr][rank])
            violated = 'a';
          else if (sat.lower[p][jr][rank] && sat.upper[p][js][rank])
            violated = 'b';
          else if (!sat.upper[p][jr][rank] && !sat.lower[p][js][rank])
            violated = 'c';
          if (violated) {
            report.pass = false;
            report.first_violation = InterpConditionViolation{
                violated, interp.targets[p].name, interp.grid_value(jr), interp.grid_value(js),
                k.tuple_unrank(rank, arity)};
            return report;
          }
        }
      }
    }
  }
  return report;
}

UpgradeResult upgrade(const Interpretation& interp, const GeneralStructure& k) {
  validate_classical(k);
  SatTables sat = satisfaction_tables(interp, k);

  Vocabulary vocab;
  for (const auto& t : interp.targets) vocab.add_predicate(t.name, t.arity);
  for (const auto& f : k.vocab().functions()) vocab.add_function(f.name, f.arity);
  for (const auto& c : k.vocab().constants()) vocab.add_constant(c);

  GeneralStructure m(vocab, k.universe());
  const int points = interp.grid_points();

  for (std::size_t p = 0; p < interp.targets.size(); ++p) {
    for (std::size_t rank = 0; rank < sat.tuple_counts[p]; ++rank) {
      std::optional<int> sup_x, inf_y;
      for (int j = 0; j < points; ++j) {
        if (sat.upper[p][j][rank]) sup_x = j;              // largest satisfied upper
        if (sat.lower[p][j][rank] && !inf_y) inf_y = j;    // smallest satisfied lower
      }
      if (!sup_x || !inf_y || *sup_x != *inf_y) {
        UpgradeFailure f;
        f.predicate = interp.targets[p].name;
        f.tuple = k.tuple_unrank(rank, interp.targets[p].arity);
        if (sup_x) f.sup_lower_bounds = interp.grid_value(*sup_x);
        if (inf_y) f.inf_upper_bounds = interp.grid_value(*inf_y);
        return UpgradeResult{std::nullopt, std::move(f)};
      }
      m.set_pred_value_at(static_cast<int>(p), rank, TruthValue(interp.grid_value(*sup_x)));
    }
  }

  for (std::size_t f = 0; f < k.vocab().functions().size(); ++f)
    for (std::size_t rank = 0; rank < k.table_size(k.vocab().functions()[f].arity); ++rank)
      m.set_fun_value_at(static_cast<int>(f), rank, k.fun_value_at(static_cast<int>(f), rank));
  for (std::size_t c = 0; c < k.vocab().constants().size(); ++c)
    m.set_constant(static_cast<int>(c), k.constant_value(static_cast<int>(c)));

  return UpgradeResult{std::move(m), std::nullopt};
}

namespace {

Partition partition_by_family(const GeneralStructure& m, int depth_budget,
                              std::size_t max_formulas, bool positive_only) {
  FamilyOptions opts;
  opts.max_height = depth_budget;
  opts.max_count = max_formulas;
  opts.positive_only = positive_only;
  opts.var_pool = 2;
  std::vector<Formula> family = generate_family(m.vocab(), opts);

  // Profile each element by the values of every family formula with the
  // element plugged into its smallest pool variable and the rest closed by
  // sup (canonically).
  Evaluator eval(m);
  std::vector<std::vector<Rational>> profile(m.size());
  for (const Formula& f : family) {
    if (f.free_vars().empty()) continue;
    const std::string pivot = f.free_vars().front();
    Formula closed = f;
    std::vector<std::string> rest = f.free_vars();
    for (auto it = rest.rbegin(); it != rest.rend(); ++it)
      if (*it != pivot) closed = Formula::sup(*it, closed);
    std::array<std::string, 1> vars{pivot};
    std::vector<TruthValue> table = eval.table(closed, vars);
    for (int e = 0; e < m.size(); ++e) profile[e].push_back(table[e].value());
  }

  std::map<std::vector<Rational>, int> classes;
  std::vector<int> assign(m.size());
  for (int e = 0; e < m.size(); ++e) {
    auto probe = classes.emplace(profile[e], static_cast<int>(classes.size()));
    assign[e] = probe.first->second;
  }
  return Partition::from_classes(assign);
}

}  // namespace

Partition positive_type_partition(const GeneralStructure& k, int depth_budget,
                                  std::size_t max_formulas) {
  validate_classical(k);
  return partition_by_family(k, depth_budget, max_formulas, true);
}

Partition continuous_type_partition(const GeneralStructure& m, int depth_budget,
                                    std::size_t max_formulas) {
  return partition_by_family(m, depth_budget, max_formulas, false);
}

}  // namespace cml
