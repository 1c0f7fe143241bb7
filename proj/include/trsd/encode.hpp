#ifndef TRSD_ENCODE_HPP
#define TRSD_ENCODE_HPP

#include <optional>
#include <string>

#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace trsd {

/// Naming scheme used when a machine is compiled to a rewrite system:
/// state q becomes the binary symbol `st_q` holding the tape halves as
/// cons-lists, alphabet symbols become constants under their own names,
/// and `init`/`term` are the entry and halt sentinels.
struct EncodingConvention {
  static constexpr const char* state_prefix = "st_";
  static constexpr const char* cons_symbol = "cons";
  static constexpr const char* nil_symbol = "nil";
  static constexpr const char* init_symbol = "init";
  static constexpr const char* term_symbol = "term";

  static std::string state_symbol(const std::string& state) {
    return std::string(state_prefix) + state;
  }
  /// Variable names used by the compiled rule schemas.
  static const std::vector<std::string>& reserved_variables();
};

/// Compiles a machine into its rewrite system. Rule order is normative:
/// for each state in declaration order the two blank-insertion rules
/// (right side first, then left), then one transition rule per delta
/// entry in declaration order, then the halt rule and the init rule.
/// Total count: 2*|states| + |delta| + 2.
/// Throws std::invalid_argument on an invalid machine or when machine
/// identifiers collide with generated names.
Trs compile_trs(const TuringMachine& tm);

/// The term picturing a configuration: st_q(L, R) where L lists the cells
/// at the head and leftwards and R the cells right of the head, each with
/// the all-blank tail trimmed away. The initial configuration encodes as
/// st_<start>(nil, nil).
Term encode_config(const TuringMachine& tm, const Configuration& k);

/// Inverse of encode_config up to translation: the head position is
/// normalized to 0 and explicit blank padding is ignored, so terms that
/// differ only in trailing blanks decode equally. Sentinels and malformed
/// terms decode to nullopt.
std::optional<Configuration> decode_term(const TuringMachine& tm, const Term& t);

/// Replays `n` machine steps from `k` as a rewrite trace starting at
/// encode_config(k): each machine step becomes at most two blank
/// insertions (only when the needed side is nil) followed by exactly one
/// transition rule. Throws std::invalid_argument if the machine is
/// invalid or halts before `n` steps.
RewriteTrace simulation_trace(const TuringMachine& tm, const Configuration& k,
                              std::size_t n);

}  // namespace trsd

#endif  // TRSD_ENCODE_HPP
