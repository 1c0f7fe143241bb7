#ifndef TRSD_FORMATS_HPP
#define TRSD_FORMATS_HPP

#include <string>

#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace trsd {

/// Machine description format, line oriented: `states:`, `alphabet:`, `blank:`,
/// `start:`, `final:` once each and `delta: q a -> q' L|R b` once per
/// entry, with `#` comments. Parsing is purely syntactic; semantic
/// defects are validate_machine's job. Throws ParseError with a byte
/// offset into the text.
TuringMachine parse_machine(const std::string& text);

/// Canonical form of the machine description: the five header lines then the
/// delta lines in declaration order, single spaces, no comments.
/// Parse-then-emit is idempotent on canonical text.
std::string machine_to_text(const TuringMachine& tm);

/// COPS-style system file: `(VAR x y ...)` then `(RULES lhs -> rhs ...)`.
/// Variables come from the VAR section; every other identifier is a
/// symbol whose arity is fixed by first use. Throws ParseError.
Trs parse_trs(const std::string& text);

/// Emits the VAR line (variables in signature order) and one rule per
/// line in rule order. Emit-parse-emit is byte-identical.
std::string trs_to_text(const Trs& trs);

/// Configuration syntax: `state@position` with an optional cell list,
/// e.g. `q1@2:0=one,1=one`. Cells assigned the blank are dropped, which
/// keeps the tape canonical. Throws ParseError; unknown states or
/// symbols are parse errors here because the text carries no other
/// context to validate against.
Configuration parse_config(const std::string& text, const TuringMachine& tm);

/// Inverse of parse_config: `state@position` plus the non-blank cells in
/// ascending index order.
std::string config_to_text(const Configuration& k);

/// 1-based line number of a byte offset, for diagnostics.
std::size_t line_of_offset(const std::string& text, std::size_t offset);

}  // namespace trsd

#endif  // TRSD_FORMATS_HPP
