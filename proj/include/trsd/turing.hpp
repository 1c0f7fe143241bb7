#ifndef TRSD_TURING_HPP
#define TRSD_TURING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trsd {

/// Tape index. Arbitrary precision: the tape is unbounded in both
/// directions and nothing ties positions to a machine word.
using CellIndex = boost::multiprecision::cpp_int;

enum class Direction { left, right };

/// A deterministic Turing machine. The step table must be total on
/// (states minus the final state) x alphabet and defined nowhere else;
/// validate_machine checks this.
struct TuringMachine {
  struct DeltaEntry {
    std::string state;
    std::string read;
    std::string next_state;
    Direction direction;
    std::string write;
  };

  std::vector<std::string> states;     // declaration order
  std::vector<std::string> alphabet;   // declaration order
  std::string blank;
  std::string start;
  std::string final_state;
  std::vector<DeltaEntry> delta;       // declaration order (normative downstream)

  bool has_state(const std::string& q) const;
  bool has_letter(const std::string& a) const;
  /// The entry for (state, read), if any.
  const DeltaEntry* lookup(const std::string& state, const std::string& read) const;
};

/// A machine snapshot: state, head position, and the finitely many
/// non-blank cells. Blank cells are never stored.
struct Configuration {
  std::string state;
  CellIndex position = 0;
  std::map<CellIndex, std::string> tape;  // non-blank cells only

  std::string cell(const CellIndex& index, const std::string& blank) const;
  /// Same configuration translated so the head sits at position 0.
  Configuration normalized() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend bool operator<(const Configuration& a, const Configuration& b);
};

Configuration initial_config(const TuringMachine& tm);

/// Empty result means the machine is well-formed; otherwise one message
/// per violated invariant.
std::vector<std::string> validate_machine(const TuringMachine& tm);

/// The unique successor configuration, or nullopt when `k` is in the
/// final state. Writes the blank by erasing the cell, keeping the tape's
/// finite support canonical.
std::optional<Configuration> step(const TuringMachine& tm, const Configuration& k);

struct RunOutcome {
  enum class Kind { halted, cycled, exceeded };
  Kind kind;
  /// halted: steps taken; exceeded: the budget that ran out.
  std::size_t steps = 0;
  std::optional<Configuration> final_config;  // halted only
  /// cycled: the first repeated configuration was first seen after
  /// `cycle_prefix` steps and recurs every `cycle_period` steps.
  std::size_t cycle_prefix = 0;
  std::size_t cycle_period = 0;
};

/// Runs from the initial configuration for at most `max_steps` steps.
/// A repeated configuration is an exact non-termination certificate
/// because the step relation is deterministic; machines that diverge
/// without repeating (for example by running off one way forever) come
/// back as `exceeded`. Throws std::invalid_argument on an invalid machine.
RunOutcome run(const TuringMachine& tm, std::size_t max_steps);

}  // namespace trsd

#endif  // TRSD_TURING_HPP
