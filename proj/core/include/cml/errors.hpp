#ifndef CML_ERRORS_HPP
#define CML_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cml {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Violation of a structural contract: arity mismatch, unknown symbol,
/// value out of range, incomplete table, and similar.
struct StructuralError : Error {
  using Error::Error;
};

/// Raised during formula evaluation: unbound free variable, element
/// literal naming a non-member of the universe.
struct EvalError : Error {
  using Error::Error;
};

}  // namespace cml

#endif
