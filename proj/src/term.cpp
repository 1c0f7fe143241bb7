#include "trsd/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace trsd {

void Signature::add_symbol(const std::string& name, std::size_t arity) {
  if (name.empty()) throw std::invalid_argument("symbol name must be nonempty");
  if (variable_set_.count(name))
    throw std::invalid_argument("identifier '" + name + "' is already a variable");
  auto it = symbol_arity_.find(name);
  if (it != symbol_arity_.end()) {
    if (it->second != arity)
      throw std::invalid_argument("symbol '" + name + "' redeclared with arity " +
                                  std::to_string(arity) + " (was " +
                                  std::to_string(it->second) + ")");
    return;
  }
  symbol_arity_.emplace(name, arity);
  symbols_.push_back(Symbol{name, arity});
}

void Signature::add_variable(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  if (symbol_arity_.count(name))
    throw std::invalid_argument("identifier '" + name + "' is already a symbol");
  if (variable_set_.count(name)) return;
  variable_set_.emplace(name, true);
  variables_.push_back(name);
}

bool Signature::is_symbol(const std::string& name) const {
  return symbol_arity_.count(name) != 0;
}

bool Signature::is_variable(const std::string& name) const {
  return variable_set_.count(name) != 0;
}

std::size_t Signature::arity(const std::string& name) const {
  return symbol_arity_.at(name);
}

Term Term::variable(std::string name) {
  Term t;
  t.variable_ = true;
  t.head_ = std::move(name);
  return t;
}

Term Term::app(std::string head, std::vector<Term> args) {
  Term t;
  t.variable_ = false;
  t.head_ = std::move(head);
  t.args_ = std::move(args);
  return t;
}

bool Term::is_ground() const {
  if (variable_) return false;
  for (const Term& a : args_)
    if (!a.is_ground()) return false;
  return true;
}

std::size_t Term::node_count() const {
  std::size_t n = 1;
  for (const Term& a : args_) n += a.node_count();
  return n;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.variable_ != b.variable_) return a.variable_ ? -1 : 1;
  if (int c = a.head_.compare(b.head_); c != 0) return c < 0 ? -1 : 1;
  if (a.args_.size() != b.args_.size()) return a.args_.size() < b.args_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (int c = compare(a.args_[i], b.args_[i]); c != 0) return c;
  return 0;
}

namespace {

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.head());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

}  // namespace

Trs::Trs(Signature signature, std::vector<Rule> rules)
    : signature_(std::move(signature)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    const std::string where = "rule " + std::to_string(i);
    if (r.lhs.is_variable())
      throw std::invalid_argument(where + ": left-hand side is a bare variable");
    validate_term(signature_, r.lhs);
    validate_term(signature_, r.rhs);
    std::set<std::string> lhs_vars, rhs_vars;
    collect_variables(r.lhs, lhs_vars);
    collect_variables(r.rhs, rhs_vars);
    for (const std::string& v : rhs_vars)
      if (!lhs_vars.count(v))
        throw std::invalid_argument(where + ": right-hand side variable '" + v +
                                    "' does not occur on the left");
  }
}

void validate_term(const Signature& sig, const Term& t) {
  if (t.is_variable()) {
    if (!sig.is_variable(t.head()))
      throw std::invalid_argument("undeclared variable '" + t.head() + "'");
    return;
  }
  if (!sig.is_symbol(t.head()))
    throw std::invalid_argument("unknown symbol '" + t.head() + "'");
  if (sig.arity(t.head()) != t.args().size())
    throw std::invalid_argument("arity mismatch for '" + t.head() + "': expected " +
                                std::to_string(sig.arity(t.head())) + ", got " +
                                std::to_string(t.args().size()));
  for (const Term& a : t.args()) validate_term(sig, a);
}

namespace {

// Recursive-descent term parser over a flat byte buffer.
class TermParser {
 public:
  TermParser(const std::string& text, const Signature& sig) : text_(text), sig_(sig) {}

  Term parse() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string parse_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_]))
      throw ParseError("expected identifier", pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Term parse_term() {
    std::size_t ident_at = (skip_ws(), pos_);
    std::string name = parse_ident();
    if (sig_.is_variable(name)) return Term::variable(std::move(name));
    if (!sig_.is_symbol(name))
      throw ParseError("unknown symbol '" + name + "'", ident_at);
    std::size_t want = sig_.arity(name);
    std::vector<Term> args;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      args.push_back(parse_term());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        args.push_back(parse_term());
        skip_ws();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ',' or ')'", pos_);
      ++pos_;
    }
    if (args.size() != want)
      throw ParseError("arity mismatch for '" + name + "': expected " +
                           std::to_string(want) + ", got " + std::to_string(args.size()),
                       ident_at);
    return Term::app(std::move(name), std::move(args));
  }

  const std::string& text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const std::string& text, const Signature& sig) {
  return TermParser(text, sig).parse();
}

namespace {

void format_into(const Term& t, std::string& out) {
  out += t.head();
  if (!t.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ',';
      format_into(t.args()[i], out);
    }
    out += ')';
  }
}

}  // namespace

std::string format_term(const Term& t) {
  std::string out;
  format_into(t, out);
  return out;
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_variable()) {
    auto [it, inserted] = sigma.emplace(pattern.head(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_variable()) return false;
  if (pattern.head() != subject.head()) return false;
  if (pattern.args().size() != subject.args().size()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], sigma)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

Term apply_substitution(const Term& t, const Substitution& s) {
  if (t.is_variable()) {
    auto it = s.find(t.head());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_substitution(a, s));
  return Term::app(t.head(), std::move(args));
}

const Term& subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (std::size_t idx : pos) {
    if (idx >= cur->args().size()) throw std::out_of_range("position outside term");
    cur = &cur->args()[idx];
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  if (pos.empty()) return replacement;
  if (pos.front() >= t.args().size()) throw std::out_of_range("position outside term");
  std::vector<Term> args = t.args();
  Position rest(pos.begin() + 1, pos.end());
  args[pos.front()] = replace_at(args[pos.front()], rest, replacement);
  return Term::app(t.head(), std::move(args));
}

namespace {

void rewrites_at_all_positions(const Trs& trs, const Term& whole, const Term& sub,
                               Position& pos, std::vector<RewriteEdge>& out) {
  for (std::size_t i = 0; i < trs.rules().size(); ++i) {
    const Rule& rule = trs.rules()[i];
    if (auto sigma = match_pattern(rule.lhs, sub)) {
      Term contracted = apply_substitution(rule.rhs, *sigma);
      out.push_back(RewriteEdge{replace_at(whole, pos, contracted), i, pos});
    }
  }
  for (std::size_t k = 0; k < sub.args().size(); ++k) {
    pos.push_back(k);
    rewrites_at_all_positions(trs, whole, sub.args()[k], pos, out);
    pos.pop_back();
  }
}

}  // namespace

std::vector<RewriteEdge> one_step_rewrites(const Trs& trs, const Term& t) {
  if (!t.is_ground())
    throw std::invalid_argument("rewriting is restricted to ground terms");
  std::vector<RewriteEdge> out;
  Position pos;
  rewrites_at_all_positions(trs, t, t, pos, out);
  return out;
}

std::vector<Term> one_step_successors(const Trs& trs, const Term& t) {
  std::vector<Term> out;
  std::set<Term> seen;
  for (const RewriteEdge& e : one_step_rewrites(trs, t))
    if (seen.insert(e.target).second) out.push_back(e.target);
  return out;
}

std::optional<Term> rewrite_at(const Trs& trs, const Term& t, const Position& pos,
                               std::size_t rule_index) {
  if (rule_index >= trs.rules().size()) return std::nullopt;
  const Rule& rule = trs.rules()[rule_index];
  const Term& sub = subterm_at(t, pos);
  auto sigma = match_pattern(rule.lhs, sub);
  if (!sigma) return std::nullopt;
  return replace_at(t, pos, apply_substitution(rule.rhs, *sigma));
}

bool RewriteTrace::replays(const Trs& trs) const {
  if (terms.empty() || terms.size() != steps.size() + 1) return false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto next = rewrite_at(trs, terms[i], steps[i].position, steps[i].rule_index);
    if (!next || *next != terms[i + 1]) return false;
  }
  return true;
}

}  // namespace trsd
