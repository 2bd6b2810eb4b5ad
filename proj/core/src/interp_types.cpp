#include "cml/interp_types.hpp"

namespace cml {

bool is_positive_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      return true;
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      return is_positive_formula(f.body());
    case Formula::Kind::Conn: {
      switch (f.conn().kind()) {
        case Connective::Kind::Min:
        case Connective::Kind::Max:
          return is_positive_formula(f.args()[0]) && is_positive_formula(f.args()[1]);
        case Connective::Kind::Const:
          // 0 is the true sentence (the empty conjunction); 1 is its dual.
          return f.conn().constant_value() == 0 || f.conn().constant_value() == 1;
        default:
          return false;
      }
    }
  }
  return false;
}

void validate_positive_formula(const Formula& f) {
  if (!is_positive_formula(f))
    throw StructuralError("formula is not positive (only atoms, min, max, sup, inf allowed)");
}

int Interpretation::grid_index(const Rational& r) const {
  Rational scaled = r * pow2(grid_log2);
  if (denominator(scaled) != 1) return -1;
  Integer j = numerator(scaled);
  if (j < 0 || j > (1 << grid_log2)) return -1;
  return static_cast<int>(j.convert_to<long>());
}

std::vector<std::string> Interpretation::frame(int arity) {
  std::vector<std::string> vars;
  vars.reserve(arity);
  for (int i = 1; i <= arity; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

}  // namespace cml
