#ifndef CML_TEXTIO_HPP
#define CML_TEXTIO_HPP

#include <string>
#include <string_view>

#include "cml/errors.hpp"
#include "cml/formula.hpp"
#include "cml/interp_types.hpp"
#include "cml/structure.hpp"

namespace cml {

/// Machine-readable diagnostic categories for the text formats.
enum class DiagCode {
  UnbalancedParens,
  UnknownSymbol,
  ArityMismatch,
  ConstantOutOfRange,
  ValueOutOfRange,
  MalformedRational,
  IncompleteTable,
  DuplicateEntry,
  MissingField,
  ForeignElement,
  WrongKind,
  BadSyntax,
  NotPositive,
  OffGrid,
};

std::string_view diag_code_name(DiagCode code);

struct ParseError : Error {
  ParseError(DiagCode code, int line, int col, const std::string& message)
      : Error(std::string(diag_code_name(code)) + " at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + message),
        code(code),
        line(line),
        col(col) {}
  DiagCode code;
  int line;
  int col;
};

// Parsers. All formats are s-expressions; diagnostics carry line/column
// and one of the codes above.
Vocabulary parse_vocabulary(std::string_view text);
GeneralStructure parse_structure(std::string_view text);
Formula parse_formula(std::string_view text, const Vocabulary& vocab);
Theory parse_theory(std::string_view text, const Vocabulary& vocab);
FormulaSequence parse_sequence(std::string_view text, const Vocabulary& vocab);
Interpretation parse_interpretation(std::string_view text, const Vocabulary& base_vocab);

/// Head symbol of a document: "vocabulary", "structure", "theory",
/// "sequence", "interpretation", or "formula" for anything else.
std::string detect_kind(std::string_view text);

// Canonical serializers: sorted tables, alpha-normalized formulas, reduced
// rationals; byte-deterministic. parse(serialize(x)) is structurally x.
std::string serialize_vocabulary(const Vocabulary& vocab);
std::string serialize_structure(const GeneralStructure& m);
std::string serialize_formula(const Formula& f, const Vocabulary& vocab);
std::string serialize_theory(const Theory& t, const Vocabulary& vocab);
std::string serialize_sequence(const FormulaSequence& seq, const Vocabulary& vocab);
std::string serialize_interpretation(const Interpretation& interp, const Vocabulary& base_vocab);

}  // namespace cml

#endif
