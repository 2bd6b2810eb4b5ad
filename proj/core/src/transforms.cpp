#include "cml/transforms.hpp"

#include <set>

namespace cml {

FormulaSequence force_convergence(const FormulaSequence& seq, const RateSchedule& step) {
  seq.validate_frame();
  FormulaSequence out;
  out.frame = seq.frame;
  out.schedule = step.tail();
  if (seq.entries.empty()) return out;

  out.entries.push_back(seq.entries.front());
  for (std::size_t m = 1; m < seq.entries.size(); ++m) {
    // Steps above 1 clamp nothing since truth gaps are at most 1, so the
    // constant is capped there (RateSchedule::at already caps).
    Formula bound = Formula::constant(step.at(static_cast<int>(m) - 1));
    const Formula& prev = out.entries.back();
    Formula lo = Formula::lift(Connective::dotminus(), {prev, bound});
    Formula hi = Formula::lift(Connective::dotplus(), {prev, bound});
    Formula clamped = Formula::lift(
        Connective::max(), {lo, Formula::lift(Connective::min(), {hi, seq.entries[m]})});
    out.entries.push_back(std::move(clamped));
  }
  return out;
}

FormulaSequence pseudometrize(const FormulaSequence& seq) {
  if (seq.frame.size() != 2)
    throw StructuralError("pseudometrize needs a two-variable frame (x, y)");
  seq.validate_frame();
  const std::string& x = seq.frame[0];
  const std::string& y = seq.frame[1];

  // A z name distinct from the frame and from anything bound inside the
  // entries (substitution is capture-avoiding, but a clean binder name
  // keeps the output readable).
  std::string z = "z";
  std::set<std::string> avoid{x, y};
  while (avoid.count(z)) z += '\'';

  FormulaSequence out;
  out.frame = seq.frame;
  out.schedule = seq.schedule;
  for (const Formula& d : seq.entries) {
    Formula d_xz = substitute(d, {{y, Term::variable(z)}});
    Formula d_yz = substitute(d, {{x, Term::variable(y)}, {y, Term::variable(z)}});
    Formula diff = Formula::lift(Connective::absdiff(), {d_xz, d_yz});
    out.entries.push_back(Formula::sup(z, std::move(diff)));
  }
  return out;
}

}  // namespace cml
