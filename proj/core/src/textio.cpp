#include "cml/textio.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace cml {

std::string_view diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::UnbalancedParens: return "unbalanced_parens";
    case DiagCode::UnknownSymbol: return "unknown_symbol";
    case DiagCode::ArityMismatch: return "arity_mismatch";
    case DiagCode::ConstantOutOfRange: return "constant_out_of_range";
    case DiagCode::ValueOutOfRange: return "value_out_of_range";
    case DiagCode::MalformedRational: return "malformed_rational";
    case DiagCode::IncompleteTable: return "incomplete_table";
    case DiagCode::DuplicateEntry: return "duplicate_entry";
    case DiagCode::MissingField: return "missing_field";
    case DiagCode::ForeignElement: return "foreign_element";
    case DiagCode::WrongKind: return "wrong_kind";
    case DiagCode::BadSyntax: return "bad_syntax";
    case DiagCode::NotPositive: return "not_positive";
    case DiagCode::OffGrid: return "off_grid";
  }
  return "unknown";
}

namespace {

// ------------------------------------------------------------- s-exprs --

struct Sexp {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexp> items;
  int line = 1, col = 1;
};

struct Reader {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(DiagCode code, const std::string& msg) const {
    throw ParseError(code, line, col, msg);
  }

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {  // comment to end of line
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_space();
    if (at_end()) fail(DiagCode::UnbalancedParens, "unexpected end of input");
    Sexp s;
    s.line = line;
    s.col = col;
    if (peek() == '(') {
      advance();
      while (true) {
        skip_space();
        if (at_end()) {
          throw ParseError(DiagCode::UnbalancedParens, s.line, s.col, "unclosed '('");
        }
        if (peek() == ')') {
          advance();
          break;
        }
        s.items.push_back(read());
      }
      return s;
    }
    if (peek() == ')') fail(DiagCode::UnbalancedParens, "unexpected ')'");
    s.is_atom = true;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' &&
           peek() != ')' && peek() != ';')
      s.atom += text[pos], advance();
    return s;
  }

  Sexp read_document() {
    Sexp s = read();
    skip_space();
    if (!at_end()) fail(DiagCode::BadSyntax, "trailing content after document");
    return s;
  }
};

[[noreturn]] void fail_at(const Sexp& s, DiagCode code, const std::string& msg) {
  throw ParseError(code, s.line, s.col, msg);
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "sup",       "inf",    "neg",   "dotminus", "dotplus",  "min",
      "max",       "half",   "absdiff", "vocabulary", "structure", "theory",
      "sequence",  "interpretation", "pred",  "fun",      "const",    "universe",
      "frame",     "schedule", "grid",  "lower",    "upper",    "formula"};
  return words;
}

bool looks_like_rational(std::string_view s) {
  if (s.empty()) return false;
  char c = s.front();
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
}

Rational parse_rational_atom(const Sexp& s) {
  auto r = parse_rational(s.atom);
  if (!r) fail_at(s, DiagCode::MalformedRational, "malformed rational: " + s.atom);
  return *r;
}

void check_name(const Sexp& s) {
  if (!s.is_atom) fail_at(s, DiagCode::BadSyntax, "expected a name");
  if (looks_like_rational(s.atom))
    fail_at(s, DiagCode::BadSyntax, "expected a name, got a number: " + s.atom);
  if (s.atom.front() == '@')
    fail_at(s, DiagCode::BadSyntax, "element literal not allowed here: " + s.atom);
  if (reserved_words().count(s.atom))
    fail_at(s, DiagCode::BadSyntax, "reserved word used as a name: " + s.atom);
}

// ------------------------------------------------------------ formulas --

Term parse_term(const Sexp& s, const Vocabulary& vocab) {
  if (s.is_atom) {
    if (looks_like_rational(s.atom))
      fail_at(s, DiagCode::BadSyntax, "number cannot be a term: " + s.atom);
    if (s.atom.front() == '@') {
      if (s.atom.size() == 1) fail_at(s, DiagCode::BadSyntax, "empty element literal");
      return Term::element(s.atom.substr(1));
    }
    if (vocab.constant_index(s.atom)) return Term::constant(s.atom);
    if (vocab.has_symbol(s.atom))
      fail_at(s, DiagCode::BadSyntax, "non-constant symbol used as a term: " + s.atom);
    if (reserved_words().count(s.atom))
      fail_at(s, DiagCode::BadSyntax, "reserved word used as a variable: " + s.atom);
    return Term::variable(s.atom);
  }
  if (s.items.empty() || !s.items[0].is_atom)
    fail_at(s, DiagCode::BadSyntax, "expected a function application");
  const std::string& head = s.items[0].atom;
  auto idx = vocab.function_index(head);
  if (!idx) fail_at(s.items[0], DiagCode::UnknownSymbol, "unknown function symbol: " + head);
  int arity = vocab.functions()[*idx].arity;
  if (arity != static_cast<int>(s.items.size()) - 1)
    fail_at(s, DiagCode::ArityMismatch,
            "function " + head + " expects " + std::to_string(arity) + " arguments, got " +
                std::to_string(s.items.size() - 1));
  std::vector<Term> args;
  for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(parse_term(s.items[i], vocab));
  return Term::apply(head, std::move(args));
}

Formula parse_formula_sexp(const Sexp& s, const Vocabulary& vocab) {
  if (s.is_atom) {
    if (!looks_like_rational(s.atom))
      fail_at(s, DiagCode::BadSyntax, "expected a formula, got: " + s.atom);
    Rational r = parse_rational_atom(s);
    if (r < 0 || r > 1)
      fail_at(s, DiagCode::ConstantOutOfRange, "constant out of [0,1]: " + s.atom);
    return Formula::constant(r);
  }
  if (s.items.empty() || !s.items[0].is_atom)
    fail_at(s, DiagCode::BadSyntax, "expected a formula");
  const Sexp& head = s.items[0];
  const std::string& op = head.atom;

  auto expect_args = [&](int n) {
    if (static_cast<int>(s.items.size()) - 1 != n)
      fail_at(s, DiagCode::ArityMismatch,
              op + " expects " + std::to_string(n) + " arguments, got " +
                  std::to_string(s.items.size() - 1));
  };

  if (op == "sup" || op == "inf") {
    expect_args(2);
    const Sexp& var = s.items[1];
    check_name(var);
    if (vocab.has_symbol(var.atom))
      fail_at(var, DiagCode::BadSyntax, "bound variable collides with declared symbol: " + var.atom);
    Formula body = parse_formula_sexp(s.items[2], vocab);
    return op == "sup" ? Formula::sup(var.atom, std::move(body))
                       : Formula::inf(var.atom, std::move(body));
  }
  if (op == "neg" || op == "half") {
    expect_args(1);
    Connective c = op == "neg" ? Connective::neg() : Connective::half();
    return Formula::lift(c, {parse_formula_sexp(s.items[1], vocab)});
  }
  if (op == "dotminus" || op == "dotplus" || op == "min" || op == "max" || op == "absdiff") {
    expect_args(2);
    Connective c = op == "dotminus" ? Connective::dotminus()
                   : op == "dotplus" ? Connective::dotplus()
                   : op == "min"     ? Connective::min()
                   : op == "max"     ? Connective::max()
                                     : Connective::absdiff();
    return Formula::lift(c, {parse_formula_sexp(s.items[1], vocab),
                             parse_formula_sexp(s.items[2], vocab)});
  }
  auto idx = vocab.predicate_index(op);
  if (!idx) fail_at(head, DiagCode::UnknownSymbol, "unknown predicate symbol: " + op);
  int arity = vocab.predicates()[*idx].arity;
  if (arity != static_cast<int>(s.items.size()) - 1)
    fail_at(s, DiagCode::ArityMismatch,
            "predicate " + op + " expects " + std::to_string(arity) + " arguments, got " +
                std::to_string(s.items.size() - 1));
  std::vector<Term> terms;
  for (std::size_t i = 1; i < s.items.size(); ++i) terms.push_back(parse_term(s.items[i], vocab));
  return Formula::atom(op, std::move(terms));
}

void expect_head(const Sexp& s, const std::string& head) {
  if (s.is_atom || s.items.empty() || !s.items[0].is_atom || s.items[0].atom != head)
    fail_at(s, DiagCode::WrongKind, "expected a (" + head + " ...) document");
}

// -------------------------------------------------------- vocabularies --

Vocabulary parse_vocabulary_sexp(const Sexp& s) {
  expect_head(s, "vocabulary");
  Vocabulary v;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const Sexp& d = s.items[i];
    if (d.is_atom || d.items.empty() || !d.items[0].is_atom)
      fail_at(d, DiagCode::BadSyntax, "expected (pred ...), (fun ...) or (const ...)");
    const std::string& kind = d.items[0].atom;
    try {
      if (kind == "pred" || kind == "fun") {
        if (d.items.size() != 3 || !d.items[2].is_atom)
          fail_at(d, DiagCode::BadSyntax, "expected (" + kind + " NAME ARITY)");
        check_name(d.items[1]);
        auto arity = parse_rational(d.items[2].atom);
        if (!arity || denominator(*arity) != 1 || *arity < 1)
          fail_at(d.items[2], DiagCode::BadSyntax, "arity must be a positive integer");
        int a = static_cast<int>(numerator(*arity).convert_to<long>());
        if (kind == "pred")
          v.add_predicate(d.items[1].atom, a);
        else
          v.add_function(d.items[1].atom, a);
      } else if (kind == "const") {
        if (d.items.size() != 2) fail_at(d, DiagCode::BadSyntax, "expected (const NAME)");
        check_name(d.items[1]);
        v.add_constant(d.items[1].atom);
      } else {
        fail_at(d.items[0], DiagCode::BadSyntax, "unknown vocabulary clause: " + kind);
      }
    } catch (const StructuralError& e) {
      fail_at(d, DiagCode::DuplicateEntry, e.what());
    }
  }
  return v;
}

// ----------------------------------------------------------- structures --

GeneralStructure parse_structure_sexp(const Sexp& s) {
  expect_head(s, "structure");
  if (s.items.size() < 3) fail_at(s, DiagCode::MissingField, "structure needs a vocabulary and a universe");

  Vocabulary vocab = parse_vocabulary_sexp(s.items[1]);

  const Sexp& u = s.items[2];
  expect_head(u, "universe");
  std::vector<std::string> universe;
  for (std::size_t i = 1; i < u.items.size(); ++i) {
    check_name(u.items[i]);
    universe.push_back(u.items[i].atom);
  }
  if (universe.empty()) fail_at(u, DiagCode::MissingField, "universe must be non-empty");

  GeneralStructure m = [&] {
    try {
      return GeneralStructure(vocab, universe);
    } catch (const StructuralError& e) {
      fail_at(u, DiagCode::DuplicateEntry, e.what());
    }
  }();

  auto element_of = [&](const Sexp& a) {
    check_name(a);
    if (!m.has_element(a.atom))
      fail_at(a, DiagCode::ForeignElement, "not a universe element: " + a.atom);
    return m.element(a.atom);
  };

  std::vector<std::vector<bool>> pred_seen, fun_seen;
  std::vector<bool> const_seen(vocab.constants().size(), false);
  for (const auto& p : vocab.predicates()) pred_seen.emplace_back(m.table_size(p.arity), false);
  for (const auto& f : vocab.functions()) fun_seen.emplace_back(m.table_size(f.arity), false);

  auto parse_tuple = [&](const Sexp& t, int arity) {
    if (t.is_atom) fail_at(t, DiagCode::BadSyntax, "expected a tuple (e1 e2 ...)");
    if (static_cast<int>(t.items.size()) != arity)
      fail_at(t, DiagCode::ArityMismatch,
              "tuple of length " + std::to_string(t.items.size()) + ", expected " +
                  std::to_string(arity));
    std::vector<int> tuple;
    for (const Sexp& a : t.items) tuple.push_back(element_of(a));
    return tuple;
  };

  for (std::size_t i = 3; i < s.items.size(); ++i) {
    const Sexp& d = s.items[i];
    if (d.is_atom || d.items.empty() || !d.items[0].is_atom)
      fail_at(d, DiagCode::BadSyntax, "expected (pred ...), (fun ...) or (const ...)");
    const std::string& kind = d.items[0].atom;
    if (kind == "pred") {
      if (d.items.size() < 2) fail_at(d, DiagCode::BadSyntax, "expected (pred NAME entries...)");
      check_name(d.items[1]);
      auto idx = vocab.predicate_index(d.items[1].atom);
      if (!idx) fail_at(d.items[1], DiagCode::UnknownSymbol, "unknown predicate: " + d.items[1].atom);
      int arity = vocab.predicates()[*idx].arity;
      for (std::size_t j = 2; j < d.items.size(); ++j) {
        const Sexp& entry = d.items[j];
        if (entry.is_atom || entry.items.size() != 2)
          fail_at(entry, DiagCode::BadSyntax, "expected ((e1 ... ek) VALUE)");
        std::vector<int> tuple = parse_tuple(entry.items[0], arity);
        if (!entry.items[1].is_atom) fail_at(entry.items[1], DiagCode::BadSyntax, "expected a value");
        Rational value = parse_rational_atom(entry.items[1]);
        if (value < 0 || value > 1)
          fail_at(entry.items[1], DiagCode::ValueOutOfRange,
                  "value out of [0,1]: " + entry.items[1].atom);
        std::size_t rank = m.tuple_rank(tuple);
        if (pred_seen[*idx][rank])
          fail_at(entry, DiagCode::DuplicateEntry, "duplicate table entry for " + d.items[1].atom);
        pred_seen[*idx][rank] = true;
        m.set_pred_value_at(*idx, rank, TruthValue(value));
      }
    } else if (kind == "fun") {
      if (d.items.size() < 2) fail_at(d, DiagCode::BadSyntax, "expected (fun NAME entries...)");
      check_name(d.items[1]);
      auto idx = vocab.function_index(d.items[1].atom);
      if (!idx) fail_at(d.items[1], DiagCode::UnknownSymbol, "unknown function: " + d.items[1].atom);
      int arity = vocab.functions()[*idx].arity;
      for (std::size_t j = 2; j < d.items.size(); ++j) {
        const Sexp& entry = d.items[j];
        if (entry.is_atom || entry.items.size() != 2)
          fail_at(entry, DiagCode::BadSyntax, "expected ((e1 ... ek) ELEMENT)");
        std::vector<int> tuple = parse_tuple(entry.items[0], arity);
        int result = element_of(entry.items[1]);
        std::size_t rank = m.tuple_rank(tuple);
        if (fun_seen[*idx][rank])
          fail_at(entry, DiagCode::DuplicateEntry, "duplicate table entry for " + d.items[1].atom);
        fun_seen[*idx][rank] = true;
        m.set_fun_value_at(*idx, rank, result);
      }
    } else if (kind == "const") {
      if (d.items.size() != 3) fail_at(d, DiagCode::BadSyntax, "expected (const NAME ELEMENT)");
      check_name(d.items[1]);
      auto idx = vocab.constant_index(d.items[1].atom);
      if (!idx) fail_at(d.items[1], DiagCode::UnknownSymbol, "unknown constant: " + d.items[1].atom);
      if (const_seen[*idx])
        fail_at(d, DiagCode::DuplicateEntry, "duplicate constant binding: " + d.items[1].atom);
      const_seen[*idx] = true;
      m.set_constant(*idx, element_of(d.items[2]));
    } else {
      fail_at(d.items[0], DiagCode::BadSyntax, "unknown structure clause: " + kind);
    }
  }

  for (std::size_t p = 0; p < pred_seen.size(); ++p)
    for (std::size_t r = 0; r < pred_seen[p].size(); ++r)
      if (!pred_seen[p][r]) {
        std::string name = vocab.predicates()[p].name;
        fail_at(s, DiagCode::IncompleteTable, "incomplete table " + name);
      }
  for (std::size_t f = 0; f < fun_seen.size(); ++f)
    for (std::size_t r = 0; r < fun_seen[f].size(); ++r)
      if (!fun_seen[f][r]) {
        std::string name = vocab.functions()[f].name;
        fail_at(s, DiagCode::IncompleteTable, "incomplete table " + name);
      }
  for (std::size_t c = 0; c < const_seen.size(); ++c)
    if (!const_seen[c])
      fail_at(s, DiagCode::MissingField, "constant not bound: " + vocab.constants()[c]);

  return m;
}

// ----------------------------------------------- theories and sequences --

Theory parse_theory_sexp(const Sexp& s, const Vocabulary& vocab) {
  expect_head(s, "theory");
  std::vector<Formula> sentences;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    Formula f = parse_formula_sexp(s.items[i], vocab);
    if (!f.free_vars().empty())
      fail_at(s.items[i], DiagCode::BadSyntax,
              "theory member has free variable: " + f.free_vars().front());
    sentences.push_back(std::move(f));
  }
  return Theory{std::move(sentences)};
}

RateSchedule parse_schedule_token(const Sexp& s) {
  if (!s.is_atom) fail_at(s, DiagCode::BadSyntax, "expected a schedule token");
  if (s.atom == "exp") return RateSchedule::exponential();
  if (s.atom == "lemma") return RateSchedule::lemma_step();
  if (s.atom == "stability") return RateSchedule::stability_step();
  fail_at(s, DiagCode::BadSyntax, "unknown schedule: " + s.atom + " (want exp|lemma|stability)");
}

std::string schedule_token(const RateSchedule& r) {
  if (r == RateSchedule::exponential()) return "exp";
  if (r == RateSchedule::lemma_step()) return "lemma";
  if (r == RateSchedule::stability_step()) return "stability";
  // Fall back to the exponential family notation scale*2^-(m+shift).
  return rational_to_string(r.scale()) + "*2^-(m+" + std::to_string(r.shift()) + ")";
}

FormulaSequence parse_sequence_sexp(const Sexp& s, const Vocabulary& vocab) {
  expect_head(s, "sequence");
  FormulaSequence seq;
  std::size_t i = 1;
  if (i < s.items.size() && !s.items[i].is_atom && !s.items[i].items.empty() &&
      s.items[i].items[0].is_atom && s.items[i].items[0].atom == "frame") {
    for (std::size_t j = 1; j < s.items[i].items.size(); ++j) {
      check_name(s.items[i].items[j]);
      seq.frame.push_back(s.items[i].items[j].atom);
    }
    ++i;
  } else {
    fail_at(s, DiagCode::MissingField, "sequence needs a (frame ...) clause");
  }
  if (i < s.items.size() && !s.items[i].is_atom && !s.items[i].items.empty() &&
      s.items[i].items[0].is_atom && s.items[i].items[0].atom == "schedule") {
    if (s.items[i].items.size() != 2)
      fail_at(s.items[i], DiagCode::BadSyntax, "expected (schedule TOKEN)");
    seq.schedule = parse_schedule_token(s.items[i].items[1]);
    ++i;
  }
  for (; i < s.items.size(); ++i)
    seq.entries.push_back(parse_formula_sexp(s.items[i], vocab));
  try {
    seq.validate_frame();
  } catch (const StructuralError& e) {
    fail_at(s, DiagCode::BadSyntax, e.what());
  }
  return seq;
}

// ------------------------------------------------------ interpretations --

Interpretation parse_interpretation_sexp(const Sexp& s, const Vocabulary& base) {
  expect_head(s, "interpretation");
  Interpretation interp;
  std::size_t i = 1;
  if (i >= s.items.size() || s.items[i].is_atom || s.items[i].items.size() != 2 ||
      !s.items[i].items[0].is_atom || s.items[i].items[0].atom != "grid")
    fail_at(s, DiagCode::MissingField, "interpretation needs a (grid DENOMINATOR) clause");
  {
    const Sexp& g = s.items[i].items[1];
    auto d = g.is_atom ? parse_rational(g.atom) : std::nullopt;
    if (!d || denominator(*d) != 1 || *d < 1)
      fail_at(g, DiagCode::BadSyntax, "grid denominator must be a positive integer");
    Integer den = numerator(*d);
    int log2 = 0;
    while (den % 2 == 0) den /= 2, ++log2;
    if (den != 1)
      fail_at(g, DiagCode::BadSyntax, "grid denominator must be a power of two");
    interp.grid_log2 = log2;
    ++i;
  }

  // Target predicate declarations.
  for (; i < s.items.size(); ++i) {
    const Sexp& d = s.items[i];
    if (d.is_atom || d.items.empty() || !d.items[0].is_atom || d.items[0].atom != "pred") break;
    if (d.items.size() != 3 || !d.items[2].is_atom)
      fail_at(d, DiagCode::BadSyntax, "expected (pred NAME ARITY)");
    check_name(d.items[1]);
    auto arity = parse_rational(d.items[2].atom);
    if (!arity || denominator(*arity) != 1 || *arity < 1)
      fail_at(d.items[2], DiagCode::BadSyntax, "arity must be a positive integer");
    for (const auto& t : interp.targets)
      if (t.name == d.items[1].atom)
        fail_at(d, DiagCode::DuplicateEntry, "duplicate target predicate: " + t.name);
    interp.targets.push_back(
        {d.items[1].atom, static_cast<int>(numerator(*arity).convert_to<long>())});
  }
  if (interp.targets.empty())
    fail_at(s, DiagCode::MissingField, "interpretation declares no target predicates");

  const int points = interp.grid_points();
  std::vector<std::vector<bool>> lower_seen(interp.targets.size(), std::vector<bool>(points, false));
  std::vector<std::vector<bool>> upper_seen = lower_seen;
  Formula truth = Formula::constant(Rational(0));
  for (const auto& t : interp.targets) {
    (void)t;
    interp.lower.emplace_back(points, truth);
    interp.upper.emplace_back(points, truth);
  }

  for (; i < s.items.size(); ++i) {
    const Sexp& d = s.items[i];
    if (d.is_atom || d.items.size() != 4 || !d.items[0].is_atom)
      fail_at(d, DiagCode::BadSyntax, "expected (lower|upper PRED R FORMULA)");
    const std::string& kind = d.items[0].atom;
    if (kind != "lower" && kind != "upper")
      fail_at(d.items[0], DiagCode::BadSyntax, "expected lower or upper, got: " + kind);
    check_name(d.items[1]);
    int target = -1;
    for (std::size_t t = 0; t < interp.targets.size(); ++t)
      if (interp.targets[t].name == d.items[1].atom) target = static_cast<int>(t);
    if (target < 0)
      fail_at(d.items[1], DiagCode::UnknownSymbol, "undeclared target predicate: " + d.items[1].atom);
    if (!d.items[2].is_atom) fail_at(d.items[2], DiagCode::BadSyntax, "expected a grid point");
    Rational r = parse_rational_atom(d.items[2]);
    if (r < 0 || r > 1)
      fail_at(d.items[2], DiagCode::ValueOutOfRange, "grid point out of [0,1]: " + d.items[2].atom);
    int j = interp.grid_index(r);
    if (j < 0)
      fail_at(d.items[2], DiagCode::OffGrid, "not on the dyadic grid: " + d.items[2].atom);
    Formula f = parse_formula_sexp(d.items[3], base);
    if (!is_positive_formula(f))
      fail_at(d.items[3], DiagCode::NotPositive, "interpretation formula is not positive");
    const auto frame = Interpretation::frame(interp.targets[target].arity);
    for (const std::string& v : f.free_vars())
      if (std::find(frame.begin(), frame.end(), v) == frame.end())
        fail_at(d.items[3], DiagCode::BadSyntax,
                "free variable outside x1..xk frame: " + v);
    auto& seen = (kind == "lower" ? lower_seen : upper_seen)[target];
    if (seen[j])
      fail_at(d, DiagCode::DuplicateEntry,
              "duplicate " + kind + " entry for " + d.items[1].atom + " at " + d.items[2].atom);
    seen[j] = true;
    (kind == "lower" ? interp.lower : interp.upper)[target][j] = std::move(f);
  }

  // Boundary defaults: lower(P, 1) and upper(P, 0) are "true" unless given.
  for (std::size_t t = 0; t < interp.targets.size(); ++t) {
    for (int j = 0; j < points; ++j) {
      if (!lower_seen[t][j] && j != points - 1)
        fail_at(s, DiagCode::IncompleteTable,
                "missing lower entry for " + interp.targets[t].name + " at " +
                    rational_to_string(interp.grid_value(j)));
      if (!upper_seen[t][j] && j != 0)
        fail_at(s, DiagCode::IncompleteTable,
                "missing upper entry for " + interp.targets[t].name + " at " +
                    rational_to_string(interp.grid_value(j)));
    }
  }
  return interp;
}

}  // namespace

// --------------------------------------------------------- entry points --

Vocabulary parse_vocabulary(std::string_view text) {
  Reader r{text};
  return parse_vocabulary_sexp(r.read_document());
}

GeneralStructure parse_structure(std::string_view text) {
  Reader r{text};
  return parse_structure_sexp(r.read_document());
}

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  Reader r{text};
  return parse_formula_sexp(r.read_document(), vocab);
}

Theory parse_theory(std::string_view text, const Vocabulary& vocab) {
  Reader r{text};
  return parse_theory_sexp(r.read_document(), vocab);
}

FormulaSequence parse_sequence(std::string_view text, const Vocabulary& vocab) {
  Reader r{text};
  return parse_sequence_sexp(r.read_document(), vocab);
}

Interpretation parse_interpretation(std::string_view text, const Vocabulary& base_vocab) {
  Reader r{text};
  return parse_interpretation_sexp(r.read_document(), base_vocab);
}

std::string detect_kind(std::string_view text) {
  Reader r{text};
  Sexp s = r.read_document();
  if (!s.is_atom && !s.items.empty() && s.items[0].is_atom) {
    const std::string& head = s.items[0].atom;
    if (head == "vocabulary" || head == "structure" || head == "theory" || head == "sequence" ||
        head == "interpretation")
      return head;
  }
  return "formula";
}

// ------------------------------------------------------------- writers --

namespace {

void write_term(std::ostream& out, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      out << t.name();
      return;
    case Term::Kind::Element:
      out << '@' << t.name();
      return;
    case Term::Kind::Apply:
      out << '(' << t.name();
      for (const Term& a : t.args()) {
        out << ' ';
        write_term(out, a);
      }
      out << ')';
      return;
  }
}

void write_formula(std::ostream& out, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      out << '(' << f.symbol();
      for (const Term& t : f.terms()) {
        out << ' ';
        write_term(out, t);
      }
      out << ')';
      return;
    case Formula::Kind::Conn:
      if (f.conn().kind() == Connective::Kind::Const) {
        out << rational_to_string(f.conn().constant_value());
        return;
      }
      out << '(' << f.conn().name();
      for (const Formula& a : f.args()) {
        out << ' ';
        write_formula(out, a);
      }
      out << ')';
      return;
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      out << (f.kind() == Formula::Kind::Sup ? "(sup " : "(inf ") << f.symbol() << ' ';
      write_formula(out, f.body());
      out << ')';
      return;
  }
}

std::set<std::string> vocab_names(const Vocabulary& vocab) {
  std::set<std::string> names;
  for (const auto& p : vocab.predicates()) names.insert(p.name);
  for (const auto& f : vocab.functions()) names.insert(f.name);
  for (const auto& c : vocab.constants()) names.insert(c);
  return names;
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  out << "(vocabulary";
  for (const auto& p : vocab.predicates()) out << " (pred " << p.name << ' ' << p.arity << ')';
  for (const auto& f : vocab.functions()) out << " (fun " << f.name << ' ' << f.arity << ')';
  for (const auto& c : vocab.constants()) out << " (const " << c << ')';
  out << ')';
}

}  // namespace

std::string serialize_vocabulary(const Vocabulary& vocab) {
  std::ostringstream out;
  write_vocabulary(out, vocab);
  out << '\n';
  return out.str();
}

std::string serialize_formula(const Formula& f, const Vocabulary& vocab) {
  std::ostringstream out;
  write_formula(out, alpha_normalize(f, vocab_names(vocab)));
  return out.str();
}

std::string serialize_structure(const GeneralStructure& m) {
  std::ostringstream out;
  out << "(structure\n  ";
  write_vocabulary(out, m.vocab());
  out << "\n  (universe";
  for (const std::string& e : m.universe()) out << ' ' << e;
  out << ')';
  for (std::size_t p = 0; p < m.vocab().predicates().size(); ++p) {
    const auto& sym = m.vocab().predicates()[p];
    out << "\n  (pred " << sym.name;
    for (std::size_t rank = 0; rank < m.table_size(sym.arity); ++rank) {
      auto tuple = m.tuple_unrank(rank, sym.arity);
      out << " ((";
      for (std::size_t i = 0; i < tuple.size(); ++i)
        out << (i ? " " : "") << m.label(tuple[i]);
      out << ") " << m.pred_value_at(static_cast<int>(p), rank).str() << ')';
    }
    out << ')';
  }
  for (std::size_t f = 0; f < m.vocab().functions().size(); ++f) {
    const auto& sym = m.vocab().functions()[f];
    out << "\n  (fun " << sym.name;
    for (std::size_t rank = 0; rank < m.table_size(sym.arity); ++rank) {
      auto tuple = m.tuple_unrank(rank, sym.arity);
      out << " ((";
      for (std::size_t i = 0; i < tuple.size(); ++i)
        out << (i ? " " : "") << m.label(tuple[i]);
      out << ") " << m.label(m.fun_value_at(static_cast<int>(f), rank)) << ')';
    }
    out << ')';
  }
  for (std::size_t c = 0; c < m.vocab().constants().size(); ++c)
    out << "\n  (const " << m.vocab().constants()[c] << ' ' << m.label(m.constant_value(static_cast<int>(c)))
        << ')';
  out << ")\n";
  return out.str();
}

std::string serialize_theory(const Theory& t, const Vocabulary& vocab) {
  std::ostringstream out;
  out << "(theory";
  for (const Formula& f : t.sentences) {
    out << "\n  ";
    write_formula(out, alpha_normalize(f, vocab_names(vocab)));
  }
  out << ")\n";
  return out.str();
}

std::string serialize_sequence(const FormulaSequence& seq, const Vocabulary& vocab) {
  std::ostringstream out;
  out << "(sequence (frame";
  for (const std::string& v : seq.frame) out << ' ' << v;
  out << ") (schedule " << schedule_token(seq.schedule) << ')';
  for (const Formula& f : seq.entries) {
    out << "\n  ";
    write_formula(out, alpha_normalize(f, vocab_names(vocab)));
  }
  out << ")\n";
  return out.str();
}

std::string serialize_interpretation(const Interpretation& interp, const Vocabulary& base_vocab) {
  std::ostringstream out;
  out << "(interpretation (grid " << (1 << interp.grid_log2) << ')';
  for (const auto& t : interp.targets) out << " (pred " << t.name << ' ' << t.arity << ')';
  for (std::size_t t = 0; t < interp.targets.size(); ++t) {
    for (int j = 0; j < interp.grid_points(); ++j) {
      out << "\n  (lower " << interp.targets[t].name << ' '
          << rational_to_string(interp.grid_value(j)) << ' ';
      write_formula(out, alpha_normalize(interp.lower[t][j], vocab_names(base_vocab)));
      out << ')';
    }
    for (int j = 0; j < interp.grid_points(); ++j) {
      out << "\n  (upper " << interp.targets[t].name << ' '
          << rational_to_string(interp.grid_value(j)) << ' ';
      write_formula(out, alpha_normalize(interp.upper[t][j], vocab_names(base_vocab)));
      out << ')';
    }
  }
  out << ")\n";
  return out.str();
}

}  // namespace cml
