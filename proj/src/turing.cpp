#include "trsd/turing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace trsd {

bool TuringMachine::has_state(const std::string& q) const {
  return std::find(states.begin(), states.end(), q) != states.end();
}

bool TuringMachine::has_letter(const std::string& a) const {
  return std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
}

const TuringMachine::DeltaEntry* TuringMachine::lookup(const std::string& state,
                                                       const std::string& read) const {
  for (const DeltaEntry& e : delta)
    if (e.state == state && e.read == read) return &e;
  return nullptr;
}

std::string Configuration::cell(const CellIndex& index, const std::string& blank) const {
  auto it = tape.find(index);
  return it == tape.end() ? blank : it->second;
}

Configuration Configuration::normalized() const {
  Configuration out;
  out.state = state;
  out.position = 0;
  for (const auto& [idx, sym] : tape) out.tape.emplace(idx - position, sym);
  return out;
}

bool operator<(const Configuration& a, const Configuration& b) {
  if (a.state != b.state) return a.state < b.state;
  if (a.position != b.position) return a.position < b.position;
  return a.tape < b.tape;
}

Configuration initial_config(const TuringMachine& tm) {
  Configuration k;
  k.state = tm.start;
  k.position = 0;
  return k;
}

std::vector<std::string> validate_machine(const TuringMachine& tm) {
  std::vector<std::string> defects;
  auto defect = [&defects](std::string msg) { defects.push_back(std::move(msg)); };

  if (tm.states.empty()) defect("state set is empty");
  if (tm.alphabet.empty()) defect("alphabet is empty");
  {
    std::set<std::string> seen;
    for (const auto& q : tm.states)
      if (!seen.insert(q).second) defect("duplicate state '" + q + "'");
  }
  {
    std::set<std::string> seen;
    for (const auto& a : tm.alphabet)
      if (!seen.insert(a).second) defect("duplicate alphabet symbol '" + a + "'");
  }
  if (!tm.has_letter(tm.blank)) defect("blank symbol '" + tm.blank + "' not in alphabet");
  if (!tm.has_state(tm.start)) defect("start state '" + tm.start + "' not in states");
  if (!tm.has_state(tm.final_state))
    defect("final state '" + tm.final_state + "' not in states");

  std::set<std::pair<std::string, std::string>> covered;
  for (const auto& e : tm.delta) {
    if (!tm.has_state(e.state)) defect("delta source state '" + e.state + "' not in states");
    if (!tm.has_state(e.next_state))
      defect("delta target state '" + e.next_state + "' not in states");
    if (!tm.has_letter(e.read)) defect("delta read symbol '" + e.read + "' not in alphabet");
    if (!tm.has_letter(e.write))
      defect("delta written symbol '" + e.write + "' not in alphabet");
    if (e.state == tm.final_state)
      defect("delta defined at final state (" + e.state + ", " + e.read + ")");
    if (!covered.emplace(e.state, e.read).second)
      defect("duplicate delta entry at (" + e.state + ", " + e.read + ")");
  }
  for (const auto& q : tm.states) {
    if (q == tm.final_state) continue;
    for (const auto& a : tm.alphabet)
      if (!covered.count({q, a})) defect("delta undefined at (" + q + ", " + a + ")");
  }
  return defects;
}

std::optional<Configuration> step(const TuringMachine& tm, const Configuration& k) {
  if (k.state == tm.final_state) return std::nullopt;
  const std::string read = k.cell(k.position, tm.blank);
  const TuringMachine::DeltaEntry* e = tm.lookup(k.state, read);
  if (e == nullptr)
    throw std::invalid_argument("delta undefined at (" + k.state + ", " + read + ")");
  Configuration next = k;
  next.state = e->next_state;
  if (e->write == tm.blank)
    next.tape.erase(k.position);
  else
    next.tape[k.position] = e->write;
  next.position = k.position + (e->direction == Direction::right ? 1 : -1);
  return next;
}

RunOutcome run(const TuringMachine& tm, std::size_t max_steps) {
  if (auto defects = validate_machine(tm); !defects.empty())
    throw std::invalid_argument("invalid machine: " + defects.front());

  Configuration current = initial_config(tm);
  std::map<Configuration, std::size_t> first_seen;
  first_seen.emplace(current, 0);

  for (std::size_t n = 0; n < max_steps; ++n) {
    auto next = step(tm, current);
    if (!next) {
      RunOutcome out;
      out.kind = RunOutcome::Kind::halted;
      out.steps = n;
      out.final_config = current;
      return out;
    }
    current = std::move(*next);
    auto [it, inserted] = first_seen.emplace(current, n + 1);
    if (!inserted) {
      RunOutcome out;
      out.kind = RunOutcome::Kind::cycled;
      out.cycle_prefix = it->second;
      out.cycle_period = n + 1 - it->second;
      return out;
    }
    if (current.state == tm.final_state) {
      RunOutcome out;
      out.kind = RunOutcome::Kind::halted;
      out.steps = n + 1;
      out.final_config = current;
      return out;
    }
  }
  RunOutcome out;
  out.kind = RunOutcome::Kind::exceeded;
  out.steps = max_steps;
  return out;
}

}  // namespace trsd
