#include "trsd/encode.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace trsd {

namespace {

const std::string kCons = EncodingConvention::cons_symbol;
const std::string kNil = EncodingConvention::nil_symbol;
const std::string kInit = EncodingConvention::init_symbol;
const std::string kTerm = EncodingConvention::term_symbol;

Term nil() { return Term::app(kNil); }
Term cons(Term head, Term tail) {
  return Term::app(kCons, {std::move(head), std::move(tail)});
}
Term var(const std::string& name) { return Term::variable(name); }

Term cons_list(const std::vector<std::string>& items) {
  Term t = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    t = cons(Term::app(*it), std::move(t));
  return t;
}

// Reads a cons/nil spine of alphabet constants; nullopt on anything else.
std::optional<std::vector<std::string>> read_list(const TuringMachine& tm, const Term& t) {
  std::vector<std::string> items;
  const Term* cur = &t;
  while (true) {
    if (cur->is_variable()) return std::nullopt;
    if (cur->head() == kNil && cur->args().empty()) return items;
    if (cur->head() != kCons || cur->args().size() != 2) return std::nullopt;
    const Term& head = cur->args()[0];
    if (head.is_variable() || !head.args().empty() || !tm.has_letter(head.head()))
      return std::nullopt;
    items.push_back(head.head());
    cur = &cur->args()[1];
  }
}

void require_valid_machine(const TuringMachine& tm) {
  if (auto defects = validate_machine(tm); !defects.empty())
    throw std::invalid_argument("invalid machine: " + defects.front());
}

void require_valid_config(const TuringMachine& tm, const Configuration& k) {
  if (!tm.has_state(k.state))
    throw std::invalid_argument("configuration state '" + k.state + "' not in machine");
  for (const auto& [idx, sym] : k.tape) {
    if (!tm.has_letter(sym))
      throw std::invalid_argument("configuration tape symbol '" + sym + "' not in alphabet");
    if (sym == tm.blank)
      throw std::invalid_argument("configuration stores an explicit blank cell");
  }
}

}  // namespace

const std::vector<std::string>& EncodingConvention::reserved_variables() {
  static const std::vector<std::string> names = {"l", "r", "x", "xs", "y", "ys"};
  return names;
}

Trs compile_trs(const TuringMachine& tm) {
  require_valid_machine(tm);

  std::set<std::string> generated = {kCons, kNil, kInit, kTerm};
  for (const auto& q : tm.states) generated.insert(EncodingConvention::state_symbol(q));
  std::set<std::string> reserved(EncodingConvention::reserved_variables().begin(),
                                 EncodingConvention::reserved_variables().end());
  for (const auto& a : tm.alphabet) {
    if (generated.count(a))
      throw std::invalid_argument("alphabet symbol '" + a +
                                  "' collides with a generated symbol name");
    if (reserved.count(a))
      throw std::invalid_argument("alphabet symbol '" + a +
                                  "' collides with a reserved rule variable");
  }

  Signature sig;
  for (const auto& q : tm.states) sig.add_symbol(EncodingConvention::state_symbol(q), 2);
  sig.add_symbol(kCons, 2);
  sig.add_symbol(kNil, 0);
  for (const auto& a : tm.alphabet) sig.add_symbol(a, 0);
  sig.add_symbol(kInit, 0);
  sig.add_symbol(kTerm, 0);
  for (const auto& v : EncodingConvention::reserved_variables()) sig.add_variable(v);

  const Term blank = Term::app(tm.blank);
  std::vector<Rule> rules;

  // Blank insertion, per state: the right side first, then the left.
  for (const auto& q : tm.states) {
    const std::string st = EncodingConvention::state_symbol(q);
    rules.push_back(Rule{Term::app(st, {var("xs"), nil()}),
                         Term::app(st, {var("xs"), cons(blank, nil())})});
    rules.push_back(Rule{Term::app(st, {nil(), var("ys")}),
                         Term::app(st, {cons(blank, nil()), var("ys")})});
  }

  // One transition rule per delta entry. Both halves of the head window
  // must be explicit, which is what the insertion rules provide.
  for (const auto& e : tm.delta) {
    const std::string src = EncodingConvention::state_symbol(e.state);
    const std::string dst = EncodingConvention::state_symbol(e.next_state);
    Term lhs = Term::app(src, {cons(Term::app(e.read), var("l")), cons(var("x"), var("r"))});
    Term rhs = e.direction == Direction::left
                   ? Term::app(dst, {var("l"), cons(Term::app(e.write), cons(var("x"), var("r")))})
                   : Term::app(dst, {cons(var("x"), cons(Term::app(e.write), var("l"))), var("r")});
    rules.push_back(Rule{std::move(lhs), std::move(rhs)});
  }

  rules.push_back(Rule{
      Term::app(EncodingConvention::state_symbol(tm.final_state), {var("x"), var("y")}),
      Term::app(kTerm)});
  rules.push_back(Rule{Term::app(kInit),
                       Term::app(EncodingConvention::state_symbol(tm.start),
                                 {nil(), nil()})});

  return Trs(std::move(sig), std::move(rules));
}

Term encode_config(const TuringMachine& tm, const Configuration& k) {
  require_valid_config(tm, k);

  std::vector<std::string> left, right;
  if (!k.tape.empty()) {
    const CellIndex lo = k.tape.begin()->first;
    const CellIndex hi = k.tape.rbegin()->first;
    for (CellIndex i = k.position; i >= lo; --i) left.push_back(k.cell(i, tm.blank));
    for (CellIndex i = k.position + 1; i <= hi; ++i) right.push_back(k.cell(i, tm.blank));
  }
  // Trim the all-blank tail on each side; an all-blank window is nil.
  while (!left.empty() && left.back() == tm.blank) left.pop_back();
  while (!right.empty() && right.back() == tm.blank) right.pop_back();

  return Term::app(EncodingConvention::state_symbol(k.state),
                   {cons_list(left), cons_list(right)});
}

std::optional<Configuration> decode_term(const TuringMachine& tm, const Term& t) {
  if (t.is_variable()) return std::nullopt;
  const std::string& head = t.head();
  const std::string prefix = EncodingConvention::state_prefix;
  if (head.rfind(prefix, 0) != 0 || t.args().size() != 2) return std::nullopt;
  const std::string state = head.substr(prefix.size());
  if (!tm.has_state(state)) return std::nullopt;

  auto left = read_list(tm, t.args()[0]);
  auto right = read_list(tm, t.args()[1]);
  if (!left || !right) return std::nullopt;

  Configuration k;
  k.state = state;
  k.position = 0;
  for (std::size_t i = 0; i < left->size(); ++i)
    if ((*left)[i] != tm.blank) k.tape.emplace(-CellIndex(i), (*left)[i]);
  for (std::size_t j = 0; j < right->size(); ++j)
    if ((*right)[j] != tm.blank) k.tape.emplace(CellIndex(j) + 1, (*right)[j]);
  return k;
}

RewriteTrace simulation_trace(const TuringMachine& tm, const Configuration& k,
                              std::size_t n) {
  require_valid_machine(tm);
  const Trs trs = compile_trs(tm);

  auto state_index = [&tm](const std::string& q) -> std::size_t {
    return static_cast<std::size_t>(
        std::find(tm.states.begin(), tm.states.end(), q) - tm.states.begin());
  };
  const std::size_t transitions_base = 2 * tm.states.size();

  RewriteTrace trace;
  trace.terms.push_back(encode_config(tm, k));
  Configuration current = k;

  auto apply_root = [&trs, &trace](std::size_t rule_index) {
    auto next = rewrite_at(trs, trace.terms.back(), {}, rule_index);
    if (!next) throw std::logic_error("simulation rule failed to match");
    trace.steps.push_back(RewriteTrace::Step{rule_index, {}});
    trace.terms.push_back(std::move(*next));
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (current.state == tm.final_state)
      throw std::invalid_argument("machine halted after " + std::to_string(i) +
                                  " steps, cannot simulate " + std::to_string(n));
    const std::size_t qi = state_index(current.state);
    const Term& here = trace.terms.back();
    if (here.args()[0] == Term::app(kNil)) apply_root(2 * qi + 1);  // left insertion
    if (trace.terms.back().args()[1] == Term::app(kNil))
      apply_root(2 * qi);  // right insertion

    const TuringMachine::DeltaEntry* e = tm.lookup(current.state,
                                                   current.cell(current.position, tm.blank));
    std::size_t delta_index = 0;
    for (; delta_index < tm.delta.size(); ++delta_index)
      if (&tm.delta[delta_index] == e) break;
    apply_root(transitions_base + delta_index);

    current = *step(tm, current);
  }
  return trace;
}

}  // namespace trsd
