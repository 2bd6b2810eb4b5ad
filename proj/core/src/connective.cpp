#include "cml/connective.hpp"

namespace cml {

Connective Connective::constant(Rational r) {
  if (r < 0 || r > 1)
    throw StructuralError("connective constant out of [0,1]: " + rational_to_string(r));
  return Connective(Kind::Const, std::move(r));
}

int Connective::arity() const {
  switch (kind_) {
    case Kind::Const: return 0;
    case Kind::Neg:
    case Kind::Half: return 1;
    default: return 2;
  }
}

std::string Connective::name() const {
  switch (kind_) {
    case Kind::Const: return rational_to_string(const_);
    case Kind::Neg: return "neg";
    case Kind::DotMinus: return "dotminus";
    case Kind::DotPlus: return "dotplus";
    case Kind::Min: return "min";
    case Kind::Max: return "max";
    case Kind::Half: return "half";
    case Kind::AbsDiff: return "absdiff";
  }
  return "?";
}

const Rational& Connective::constant_value() const {
  if (kind_ != Kind::Const) throw StructuralError("not a constant connective: " + name());
  return const_;
}

Rational Connective::lipschitz_constant() const {
  switch (kind_) {
    case Kind::Const: return Rational(0);
    case Kind::Half: return Rational(1, 2);
    default: return Rational(1);
  }
}

TruthValue Connective::apply(std::span<const TruthValue> args) const {
  if (static_cast<int>(args.size()) != arity())
    throw StructuralError("connective " + name() + " expects " + std::to_string(arity()) +
                          " arguments, got " + std::to_string(args.size()));
  switch (kind_) {
    case Kind::Const:
      return TruthValue(const_);
    case Kind::Neg:
      return TruthValue(Rational(1) - args[0].value());
    case Kind::DotMinus: {
      Rational d = args[0].value() - args[1].value();
      return TruthValue(d > 0 ? d : Rational(0));
    }
    case Kind::DotPlus: {
      Rational s = args[0].value() + args[1].value();
      return TruthValue(s < 1 ? s : Rational(1));
    }
    case Kind::Min:
      return args[0] < args[1] ? args[0] : args[1];
    case Kind::Max:
      return args[0] < args[1] ? args[1] : args[0];
    case Kind::Half:
      return TruthValue(args[0].value() / 2);
    case Kind::AbsDiff:
      return tv_absdiff(args[0], args[1]);
  }
  throw StructuralError("unreachable connective kind");
}

TruthValue apply_connective(const Connective& conn, std::span<const TruthValue> args) {
  return conn.apply(args);
}

}  // namespace cml
