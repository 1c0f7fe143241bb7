#ifndef TRSD_DIAMOND_HPP
#define TRSD_DIAMOND_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trsd/reach.hpp"
#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace trsd {

/// How far a branch may travel to the common term: `star` any number of
/// steps, `plus` at least one, `eq` at most one, `one` exactly one.
/// `one` is spelled `1` in all textual syntax.
enum class ShapeLabel { star, plus, eq, one };

std::string label_to_string(ShapeLabel label);

/// A diamond-like shape: n branches leave a common peak in one step each
/// and must rejoin under the per-branch labels.
struct DiamondShape {
  std::vector<ShapeLabel> labels;  // one per branch, never empty

  std::size_t branch_count() const noexcept { return labels.size(); }
  friend bool operator==(const DiamondShape&, const DiamondShape&) = default;
};

/// The named shapes, in documentation order: local-confluence (*,*),
/// strong-confluence (*,=), diamond (1,1), subcommutative (=,=),
/// successor (1).
const std::vector<std::pair<std::string, DiamondShape>>& named_shapes();

/// Accepts a shape name or a comma-separated label list over {*,+,=,1}.
/// Throws ParseError on an unknown name, an empty list, or a bad token.
DiamondShape parse_shape(const std::string& text);

/// Canonical comma-separated label list, e.g. "*,=".
std::string shape_to_string(const DiamondShape& shape);

/// The name of the shape if it has one.
std::optional<std::string> shape_name(const DiamondShape& shape);

/// Joinability answer. `yes` carries the witness: the first term in the
/// first branch's labeled cone (breadth-first order) that lies in every
/// other branch's cone. `no` means all cones were computed completely and
/// share nothing. `unknown` means no witness surfaced before a budget cut
/// a cone short.
struct JoinResult {
  Decision decision = Decision::unknown;
  std::optional<Term> witness;
  std::string note;
};

/// Can the branches meet, each within its label? Throws
/// std::invalid_argument when branch and label counts differ or a branch
/// is not ground.
JoinResult joinable(const Trs& trs, const std::vector<Term>& branches,
                    const std::vector<ShapeLabel>& labels, const Budget& budget);

/// Same observable contract as joinable, implemented independently as a
/// naive level-by-level enumeration with its own matching and rewriting.
/// Exists to check joinable against, not to be fast.
JoinResult oracle_joinable(const Trs& trs, const std::vector<Term>& branches,
                           const std::vector<ShapeLabel>& labels, const Budget& budget);

enum class ShapeVerdict { holds, counterexample, unknown };

std::string verdict_to_string(ShapeVerdict verdict);

/// A peak whose branches provably cannot rejoin under the labels.
/// `branch_evidence[i]` replays peak-to-branch in the checked relation:
/// a single rewrite step for a plain system, a full rewrite path standing
/// for one derived step otherwise.
struct ShapeCounterexample {
  Term peak;
  std::vector<Term> branches;
  std::vector<RewriteTrace> branch_evidence;
  std::string reason;
};

/// Outcome of a shape check. `exact` marks verdicts backed by a
/// certificate (a termination or non-termination proof, or complete
/// cones) rather than by a budget-bounded sweep; counterexamples are
/// always definite and hence exact. The evidence fields are filled as
/// applicable: `join_witness` and `certificate` for holds, `cycle` and
/// `counterexample` for failures.
struct ShapeCheckResult {
  ShapeVerdict verdict = ShapeVerdict::unknown;
  bool exact = false;
  std::optional<Term> join_witness;
  std::optional<RewriteTrace> certificate;
  std::optional<CycleCertificate> cycle;
  std::optional<ShapeCounterexample> counterexample;
  std::size_t peaks_checked = 0;
  std::string note;
};

/// Checks the shape over the given ground peaks: for every peak and every
/// tuple (with repetition) of its one-step successors, the tuple must be
/// joinable. Returns the first definite failure as a counterexample, in
/// peak order then tuple order; holds only boundedly, since the peak set
/// is a declared domain, and only when no tuple came back unknown.
ShapeCheckResult check_shape_on_trs(const Trs& trs, const DiamondShape& shape,
                                    const std::vector<Term>& peaks,
                                    const Budget& budget);

/// Checks the shape on the relation derived from the machine, using the
/// termination verdict for exact answers: a terminating machine joins
/// every branch tuple at the halt sentinel in one derived step; a
/// non-terminating one yields a definite counterexample at `init`; an
/// undecided one yields unknown. Single-branch shapes labeled * or = hold
/// for every relation and short-circuit. With `cross_check`, the bounded
/// direct check also runs over the reachable cone and a contradiction
/// with the exact verdict throws std::logic_error.
ShapeCheckResult check_shape_on_derived(DerivedRelation& rel, const DiamondShape& shape,
                                        bool cross_check = false);
ShapeCheckResult check_shape_on_derived(const TuringMachine& tm, const DiamondShape& shape,
                                        const Budget& budget, bool cross_check = false);

}  // namespace trsd

#endif  // TRSD_DIAMOND_HPP
