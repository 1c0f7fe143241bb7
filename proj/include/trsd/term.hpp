#ifndef TRSD_TERM_HPP
#define TRSD_TERM_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trsd {

/// A function symbol: a name with a fixed arity.
struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Raised by the term and file parsers; `position` is a byte offset into
/// the parsed text (0-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A finite set of symbols plus the declared variable names. No identifier
/// may be both a symbol and a variable.
class Signature {
 public:
  Signature() = default;

  /// Adds a symbol; throws std::invalid_argument on a name clash or on a
  /// conflicting arity for an already-known symbol.
  void add_symbol(const std::string& name, std::size_t arity);
  void add_variable(const std::string& name);

  bool is_symbol(const std::string& name) const;
  bool is_variable(const std::string& name) const;
  /// Arity of a known symbol; throws std::out_of_range otherwise.
  std::size_t arity(const std::string& name) const;

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

 private:
  std::vector<Symbol> symbols_;            // declaration order
  std::vector<std::string> variables_;     // declaration order
  std::map<std::string, std::size_t> symbol_arity_;
  std::map<std::string, bool> variable_set_;
};

/// A first-order term: a variable or an application of a symbol to
/// argument terms. Immutable after construction; plain value semantics,
/// structural equality, safe to share across threads.
class Term {
 public:
  static Term variable(std::string name);
  static Term app(std::string head, std::vector<Term> args = {});

  bool is_variable() const noexcept { return variable_; }
  /// Variable name or symbol name.
  const std::string& head() const noexcept { return head_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  bool is_ground() const;
  std::size_t node_count() const;

  /// Structural order: variables before applications, then head, then args.
  static int compare(const Term& a, const Term& b);

  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  Term() = default;
  bool variable_ = false;
  std::string head_;
  std::vector<Term> args_;
};

using Substitution = std::map<std::string, Term>;

/// A path from the root: the index of the argument taken at each node.
using Position = std::vector<std::size_t>;

/// A directed rewrite rule. Invariants: lhs is not a bare variable and
/// every variable of rhs occurs in lhs. Checked by Trs.
struct Rule {
  Term lhs;
  Term rhs;
};

/// A term rewriting system: a signature plus an ordered, finite rule list.
/// The constructor validates every rule against the signature.
class Trs {
 public:
  Trs(Signature signature, std::vector<Rule> rules);

  const Signature& signature() const noexcept { return signature_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }

 private:
  Signature signature_;
  std::vector<Rule> rules_;
};

/// Checks well-formedness over a signature: known symbols, exact arities,
/// declared variables. Throws std::invalid_argument on violation.
void validate_term(const Signature& sig, const Term& t);

/// Parses `ident | ident "(" term ("," term)* ")"`. Identifiers match
/// [A-Za-z_][A-Za-z0-9_]*; whitespace is insignificant. Identifiers
/// declared as variables in `sig` parse as variables; all others must be
/// known symbols with matching arity.
Term parse_term(const std::string& text, const Signature& sig);

/// Canonical text: `head` or `head(arg,...)`, no whitespace.
/// parse_term(format_term(t)) == t.
std::string format_term(const Term& t);

/// First-order matching of `pattern` against ground `subject`. Nonlinear
/// patterns require equal bindings. Absence is a value, not an error.
std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject);

/// Simultaneous replacement of mapped variables; unmapped variables stay.
Term apply_substitution(const Term& t, const Substitution& s);

const Term& subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);

/// One rewrite step: the resulting term plus which rule fired where.
struct RewriteEdge {
  Term target;
  std::size_t rule_index;
  Position position;
};

/// All one-step rewrites of ground `t`, in leftmost-outermost position
/// order and, per position, rule order. Not deduplicated.
std::vector<RewriteEdge> one_step_rewrites(const Trs& trs, const Term& t);

/// The set of one-step successors of ground `t`: one_step_rewrites targets
/// deduplicated keeping first occurrence. Deterministic for fixed inputs.
std::vector<Term> one_step_successors(const Trs& trs, const Term& t);

/// Rewrites `t` at `pos` with rule `rule_index`, or nullopt if the rule
/// does not match there.
std::optional<Term> rewrite_at(const Trs& trs, const Term& t, const Position& pos,
                               std::size_t rule_index);

/// A rewrite sequence with, for each adjacent pair, the rule and redex
/// position that produced it. terms.size() == steps.size() + 1.
struct RewriteTrace {
  struct Step {
    std::size_t rule_index;
    Position position;
  };
  std::vector<Term> terms;
  std::vector<Step> steps;

  std::size_t length() const noexcept { return steps.size(); }
  /// Re-checks every step under `trs`.
  bool replays(const Trs& trs) const;
};

}  // namespace trsd

#endif  // TRSD_TERM_HPP
