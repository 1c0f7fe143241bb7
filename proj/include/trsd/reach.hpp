#ifndef TRSD_REACH_HPP
#define TRSD_REACH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trsd/encode.hpp"
#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace trsd {

/// Exploration limits. Every bound must be positive; exceeding any of
/// them makes a result incomplete rather than wrong.
struct Budget {
  std::size_t max_rewrite_steps = 1000;   // breadth-first depth
  std::size_t max_distinct_terms = 5000;  // distinct terms kept
  std::size_t max_term_size = 10000;      // node count per kept term
};

/// Throws std::invalid_argument when a bound is zero.
void validate_budget(const Budget& budget);

/// Terms reachable from a seed in zero or more steps, in discovery
/// (breadth-first) order with the seed first. `complete` means the set is
/// closed under rewriting: nothing was cut off by the budget, so the set
/// is exact. Otherwise `note` says which limit bit.
struct ReachSet {
  std::vector<Term> terms;
  bool complete = false;
  std::size_t depth_reached = 0;
  std::string note;

  bool contains(const Term& t) const;
};

/// Like ReachSet but with the one-step edges kept: `from`/`to` index into
/// `nodes`, and parallel edges (same pair, different rule or position)
/// all appear.
struct ReachGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::size_t rule_index;
    Position position;
  };

  std::vector<Term> nodes;
  std::vector<Edge> edges;
  bool complete = false;
  std::size_t depth_reached = 0;
  std::string note;
};

/// Breadth-first closure of a ground seed. Throws std::invalid_argument
/// on a non-ground seed or a zero budget.
ReachSet reachable_terms(const Trs& trs, const Term& seed, const Budget& budget);
ReachGraph reachable_graph(const Trs& trs, const Term& seed, const Budget& budget);

enum class Decision { yes, no, unknown };

/// Exact non-termination evidence: the machine's configuration sequence
/// repeats, entering a loop of length `period` after `prefix` steps.
struct CycleCertificate {
  std::size_t prefix = 0;
  std::size_t period = 0;
};

/// A verdict with its evidence. `yes` carries a replayable witness trace
/// where a path is what is being claimed; `no` carries a complete closure
/// without the target, a machine cycle, or both. `unknown` is an honest
/// budget answer and explains itself in `note`.
struct ThreeValued {
  Decision decision = Decision::unknown;
  std::optional<RewriteTrace> witness;
  std::optional<ReachSet> closure;
  std::optional<CycleCertificate> cycle;
  std::string note;
};

/// Does `from` reach `to` in one or more steps? A cycle back to the seed
/// counts; mere equality does not.
ThreeValued reaches_plus(const Trs& trs, const Term& from, const Term& to,
                         const Budget& budget);

/// Decides termination of the machine through its compiled system: the
/// machine halts from the empty tape iff `init` reaches `term`. Runs the
/// machine directly (cycle detection gives exact negatives) and explores
/// the compiled system (a complete `term`-free closure also gives an
/// exact negative); the two views are combined and must agree, which is
/// asserted. `budget.max_rewrite_steps` also caps the machine run.
ThreeValued terminates_via_trs(const TuringMachine& tm, const Budget& budget);

/// The relation derived from a compiled machine. Successors of `init` are
/// everything `init` reaches in one or more rewrite steps; when `init`
/// also reaches `term`, every term `t` reachable from `init` additionally
/// steps to everything `t` reaches in zero or more rewrite steps (itself
/// included). All views are budget-bounded and memoized.
class DerivedRelation {
 public:
  DerivedRelation(TuringMachine tm, Budget budget);

  const TuringMachine& machine() const noexcept { return tm_; }
  const Trs& trs() const noexcept { return trs_; }
  const Budget& budget() const noexcept { return budget_; }
  Term init_term() const { return Term::app(EncodingConvention::init_symbol); }

  const ThreeValued& termination();
  /// Closure of `init` under rewriting.
  const ReachSet& init_cone();
  /// Closure of `t` under rewriting.
  const ReachSet& star_cone(const Term& t);

  /// Successor set of `t` under the derived relation. `complete` is false
  /// when a budget truncated the set or when the facts the relation is
  /// conditioned on (termination, reachability of `t`) are unresolved.
  ReachSet successors(const Term& t);

 private:
  TuringMachine tm_;
  Budget budget_;
  Trs trs_;
  std::optional<ThreeValued> termination_;
  std::optional<ReachSet> init_cone_;
  std::map<Term, ReachSet> star_cones_;
};

}  // namespace trsd

#endif  // TRSD_REACH_HPP
