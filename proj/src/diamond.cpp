#include "trsd/diamond.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

#include "trsd/encode.hpp"

namespace trsd {

namespace {

std::string plural(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

using SuccFn = std::function<ReachSet(const Term&)>;

/// Labeled cones over an abstract one-step successor function, memoized
/// per (term, label). The same budget discipline as reachable_terms:
/// depth, count, and size limits make a cone incomplete, never wrong.
class ConeCache {
 public:
  /// A labeled cone plus a set view of it, so tuple scans can test
  /// membership without walking the breadth-first vector.
  struct Entry {
    ReachSet set;
    std::set<Term> members;
  };

  ConeCache(SuccFn succ, const Budget& budget)
      : succ_(std::move(succ)), budget_(budget) {}

  const Entry& get(const Term& t, ShapeLabel label) {
    auto key = std::make_pair(t, static_cast<int>(label));
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      Entry entry{compute(t, label), {}};
      entry.members.insert(entry.set.terms.begin(), entry.set.terms.end());
      it = memo_.emplace(std::move(key), std::move(entry)).first;
    }
    return it->second;
  }

 private:
  ReachSet compute(const Term& t, ShapeLabel label) {
    ReachSet out;
    out.complete = true;
    std::set<Term> seen;

    auto flag = [&out](const std::string& msg) {
      out.complete = false;
      if (out.note.empty()) out.note = msg;
    };
    auto add = [&](const Term& u, std::size_t depth) -> bool {
      if (seen.count(u)) return false;
      if (out.terms.size() >= budget_.max_distinct_terms) {
        flag("term limit reached (max_distinct_terms=" +
             std::to_string(budget_.max_distinct_terms) + ")");
        return false;
      }
      if (u.node_count() > budget_.max_term_size) {
        flag("size limit reached (max_term_size=" +
             std::to_string(budget_.max_term_size) + ")");
        return false;
      }
      seen.insert(u);
      out.terms.push_back(u);
      out.depth_reached = std::max(out.depth_reached, depth);
      return true;
    };
    auto seed = [&](const Term& u) {
      seen.insert(u);
      out.terms.push_back(u);
    };

    if (label == ShapeLabel::one || label == ShapeLabel::eq) {
      if (label == ShapeLabel::eq) seed(t);
      ReachSet s = succ_(t);
      if (!s.complete) flag(s.note);
      for (const Term& u : s.terms) add(u, 1);
      return out;
    }

    std::vector<Term> frontier;
    std::size_t depth = 0;
    if (label == ShapeLabel::star) {
      seed(t);
      frontier.push_back(t);
    } else {
      ReachSet s = succ_(t);
      if (!s.complete) flag(s.note);
      for (const Term& u : s.terms)
        if (add(u, 1)) frontier.push_back(u);
      depth = 1;
    }
    while (!frontier.empty()) {
      std::vector<Term> next;
      for (const Term& v : frontier) {
        ReachSet s = succ_(v);
        if (!s.complete) flag(s.note);
        for (const Term& u : s.terms) {
          if (seen.count(u)) continue;
          if (depth + 1 > budget_.max_rewrite_steps) {
            flag("step limit reached (max_rewrite_steps=" +
                 std::to_string(budget_.max_rewrite_steps) + ")");
            continue;
          }
          if (add(u, depth + 1)) next.push_back(u);
        }
      }
      frontier = std::move(next);
      ++depth;
    }
    return out;
  }

  SuccFn succ_;
  const Budget& budget_;
  std::map<std::pair<Term, int>, Entry> memo_;
};

void require_branches(const std::vector<Term>& branches,
                      const std::vector<ShapeLabel>& labels) {
  if (branches.size() != labels.size())
    throw std::invalid_argument("branch and label counts differ");
  if (branches.empty())
    throw std::invalid_argument("at least one branch is required");
  for (const Term& b : branches)
    if (!b.is_ground()) throw std::invalid_argument("branches must be ground");
}

JoinResult join_entries(const std::vector<const ConeCache::Entry*>& cones) {
  bool all_complete = true;
  for (const ConeCache::Entry* e : cones)
    all_complete = e->set.complete && all_complete;

  for (const Term& u : cones[0]->set.terms) {
    bool everywhere = true;
    for (std::size_t i = 1; i < cones.size() && everywhere; ++i)
      everywhere = cones[i]->members.count(u) != 0;
    if (everywhere) {
      JoinResult r;
      r.decision = Decision::yes;
      r.witness = u;
      r.note = "witness lies in every labeled cone";
      return r;
    }
  }
  JoinResult r;
  if (all_complete) {
    r.decision = Decision::no;
    r.note = "all labeled cones are complete and share no term";
  } else {
    r.decision = Decision::unknown;
    r.note = "no shared term surfaced before a cone was truncated";
  }
  return r;
}

JoinResult join_with_cache(ConeCache& cache, const std::vector<Term>& branches,
                           const std::vector<ShapeLabel>& labels) {
  require_branches(branches, labels);
  std::vector<const ConeCache::Entry*> cones;
  cones.reserve(branches.size());
  for (std::size_t i = 0; i < branches.size(); ++i)
    cones.push_back(&cache.get(branches[i], labels[i]));
  return join_entries(cones);
}

struct RawCounterexample {
  Term peak;
  std::vector<Term> branches;
  std::string reason;
};

struct RawCheck {
  ShapeVerdict verdict = ShapeVerdict::holds;
  std::optional<RawCounterexample> cex;
  std::size_t peaks_checked = 0;
  std::size_t tuples_checked = 0;
  bool saw_unknown = false;
};

/// Scans every peak and every successor tuple (with repetition, in index
/// order) and stops at the first definite join failure. Unknown joins are
/// remembered but the scan keeps hunting for a definite one.
RawCheck check_with(const SuccFn& succ, const DiamondShape& shape,
                    const std::vector<Term>& peaks, const Budget& budget) {
  if (shape.labels.empty())
    throw std::invalid_argument("shape needs at least one label");
  validate_budget(budget);

  ConeCache cache(succ, budget);
  RawCheck out;
  const std::size_t n = shape.branch_count();

  for (const Term& peak : peaks) {
    ++out.peaks_checked;
    const ReachSet succs = succ(peak);
    if (!succs.complete) out.saw_unknown = true;
    if (succs.terms.empty()) continue;  // no tuples to fail: vacuous

    const std::size_t m = succs.terms.size();
    std::vector<std::vector<const ConeCache::Entry*>> cone(n);
    for (std::size_t i = 0; i < n; ++i) {
      cone[i].reserve(m);
      for (std::size_t j = 0; j < m; ++j)
        cone[i].push_back(&cache.get(succs.terms[j], shape.labels[i]));
    }

    std::vector<const ConeCache::Entry*> tuple(n);
    auto evaluate = [&](const std::vector<std::size_t>& pick) -> Decision {
      for (std::size_t i = 0; i < n; ++i) tuple[i] = cone[i][pick[i]];
      const JoinResult jr = join_entries(tuple);
      ++out.tuples_checked;
      if (jr.decision == Decision::no) {
        std::vector<Term> branches;
        branches.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
          branches.push_back(succs.terms[pick[i]]);
        out.verdict = ShapeVerdict::counterexample;
        out.cex = RawCounterexample{peak, std::move(branches), jr.note};
      }
      return jr.decision;
    };
    auto advance = [](std::vector<std::size_t>& pos,
                      const std::vector<std::size_t>& sizes) -> bool {
      for (std::size_t k = pos.size(); k-- > 0;) {
        if (++pos[k] < sizes[k]) return true;
        pos[k] = 0;
      }
      return false;
    };

    bool failed = false;
    if (!out.saw_unknown) {
      const std::vector<std::size_t> sizes(n, m);
      std::vector<std::size_t> pick(n, 0);
      do {
        const Decision d = evaluate(pick);
        if (d == Decision::no) failed = true;
        if (d == Decision::unknown) out.saw_unknown = true;
        if (d != Decision::yes) break;
      } while (advance(pick, sizes));
    }
    if (!failed && out.saw_unknown) {
      // A definite failure needs every cone in the tuple complete, so once
      // truncation has been seen the hunt can be confined to successors
      // with complete cones; that subproduct keeps the tuple order, and
      // re-evaluating a joinable prefix only repeats yes answers.
      std::vector<std::vector<std::size_t>> allowed(n);
      std::vector<std::size_t> sizes(n);
      bool feasible = true;
      for (std::size_t i = 0; i < n && feasible; ++i) {
        for (std::size_t j = 0; j < m; ++j)
          if (cone[i][j]->set.complete) allowed[i].push_back(j);
        sizes[i] = allowed[i].size();
        feasible = sizes[i] > 0;
      }
      if (feasible) {
        std::vector<std::size_t> sel(n, 0);
        std::vector<std::size_t> pick(n);
        do {
          for (std::size_t i = 0; i < n; ++i) pick[i] = allowed[i][sel[i]];
          if (evaluate(pick) == Decision::no) {
            failed = true;
            break;
          }
        } while (advance(sel, sizes));
      }
    }
    if (failed) return out;
  }
  out.verdict = out.saw_unknown ? ShapeVerdict::unknown : ShapeVerdict::holds;
  return out;
}

SuccFn trs_successors(const Trs& trs) {
  return [&trs](const Term& t) {
    ReachSet r;
    r.terms = one_step_successors(trs, t);
    r.complete = true;
    r.depth_reached = r.terms.empty() ? 0 : 1;
    return r;
  };
}

// Independent machinery for the oracle: its own matching, instantiation,
// and step enumeration, naive on purpose.

bool oracle_match(const Term& pattern, const Term& subject,
                  std::map<std::string, Term>& binding) {
  if (pattern.is_variable()) {
    auto it = binding.find(pattern.head());
    if (it == binding.end()) {
      binding.emplace(pattern.head(), subject);
      return true;
    }
    return it->second == subject;
  }
  if (subject.is_variable()) return false;
  if (pattern.head() != subject.head()) return false;
  if (pattern.args().size() != subject.args().size()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!oracle_match(pattern.args()[i], subject.args()[i], binding)) return false;
  return true;
}

Term oracle_instantiate(const Term& t, const std::map<std::string, Term>& binding) {
  if (t.is_variable()) {
    auto it = binding.find(t.head());
    return it == binding.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(oracle_instantiate(a, binding));
  return Term::app(t.head(), std::move(args));
}

void oracle_steps(const Trs& trs, const Term& t, std::vector<Term>& out) {
  for (const Rule& rule : trs.rules()) {
    std::map<std::string, Term> binding;
    if (oracle_match(rule.lhs, t, binding))
      out.push_back(oracle_instantiate(rule.rhs, binding));
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    std::vector<Term> inner;
    oracle_steps(trs, t.args()[i], inner);
    for (Term& u : inner) {
      std::vector<Term> args = t.args();
      args[i] = std::move(u);
      out.push_back(Term::app(t.head(), std::move(args)));
    }
  }
}

struct OracleCone {
  std::vector<Term> terms;
  bool complete = true;
};

OracleCone oracle_cone(const Trs& trs, const Term& t, ShapeLabel label,
                       const Budget& budget) {
  OracleCone cone;
  std::set<Term> seen;
  auto add = [&](const Term& u) -> bool {
    if (seen.count(u)) return false;
    if (cone.terms.size() >= budget.max_distinct_terms) {
      cone.complete = false;
      return false;
    }
    if (u.node_count() > budget.max_term_size) {
      cone.complete = false;
      return false;
    }
    seen.insert(u);
    cone.terms.push_back(u);
    return true;
  };
  auto single = [&trs](const Term& v) {
    std::vector<Term> out;
    oracle_steps(trs, v, out);
    return out;
  };

  if (label == ShapeLabel::one || label == ShapeLabel::eq) {
    if (label == ShapeLabel::eq) {
      seen.insert(t);
      cone.terms.push_back(t);
    }
    for (const Term& u : single(t)) add(u);
    return cone;
  }

  std::vector<Term> frontier;
  std::size_t depth = 0;
  if (label == ShapeLabel::star) {
    seen.insert(t);
    cone.terms.push_back(t);
    frontier.push_back(t);
  } else {
    for (const Term& u : single(t))
      if (add(u)) frontier.push_back(u);
    depth = 1;
  }
  while (!frontier.empty()) {
    std::vector<Term> next;
    for (const Term& v : frontier)
      for (const Term& u : single(v)) {
        if (seen.count(u)) continue;
        if (depth + 1 > budget.max_rewrite_steps) {
          cone.complete = false;
          continue;
        }
        if (add(u)) next.push_back(u);
      }
    frontier = std::move(next);
    ++depth;
  }
  return cone;
}

}  // namespace

std::string label_to_string(ShapeLabel label) {
  switch (label) {
    case ShapeLabel::star: return "*";
    case ShapeLabel::plus: return "+";
    case ShapeLabel::eq: return "=";
    case ShapeLabel::one: return "1";
  }
  return "?";
}

std::string verdict_to_string(ShapeVerdict verdict) {
  switch (verdict) {
    case ShapeVerdict::holds: return "holds";
    case ShapeVerdict::counterexample: return "counterexample";
    case ShapeVerdict::unknown: return "unknown";
  }
  return "?";
}

const std::vector<std::pair<std::string, DiamondShape>>& named_shapes() {
  static const std::vector<std::pair<std::string, DiamondShape>> table = {
      {"local-confluence", DiamondShape{{ShapeLabel::star, ShapeLabel::star}}},
      {"strong-confluence", DiamondShape{{ShapeLabel::star, ShapeLabel::eq}}},
      {"diamond", DiamondShape{{ShapeLabel::one, ShapeLabel::one}}},
      {"subcommutative", DiamondShape{{ShapeLabel::eq, ShapeLabel::eq}}},
      {"successor", DiamondShape{{ShapeLabel::one}}},
  };
  return table;
}

DiamondShape parse_shape(const std::string& text) {
  auto trim = [&text](std::size_t begin, std::size_t end) {
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return std::make_pair(begin, end);
  };

  const auto [tb, te] = trim(0, text.size());
  const std::string whole = text.substr(tb, te - tb);
  for (const auto& [name, shape] : named_shapes())
    if (name == whole) return shape;
  if (whole.empty()) throw ParseError("empty shape", 0);

  DiamondShape shape;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    const auto [b, e] = trim(start, end);
    if (b == e) throw ParseError("empty shape label", b);
    const std::string token = text.substr(b, e - b);
    if (token == "*")
      shape.labels.push_back(ShapeLabel::star);
    else if (token == "+")
      shape.labels.push_back(ShapeLabel::plus);
    else if (token == "=")
      shape.labels.push_back(ShapeLabel::eq);
    else if (token == "1")
      shape.labels.push_back(ShapeLabel::one);
    else
      throw ParseError("unknown shape label '" + token + "'", b);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return shape;
}

std::string shape_to_string(const DiamondShape& shape) {
  std::string out;
  for (std::size_t i = 0; i < shape.labels.size(); ++i) {
    if (i) out += ",";
    out += label_to_string(shape.labels[i]);
  }
  return out;
}

std::optional<std::string> shape_name(const DiamondShape& shape) {
  for (const auto& [name, candidate] : named_shapes())
    if (candidate == shape) return name;
  return std::nullopt;
}

JoinResult joinable(const Trs& trs, const std::vector<Term>& branches,
                    const std::vector<ShapeLabel>& labels, const Budget& budget) {
  validate_budget(budget);
  require_branches(branches, labels);
  for (const Term& b : branches) validate_term(trs.signature(), b);
  ConeCache cache(trs_successors(trs), budget);
  return join_with_cache(cache, branches, labels);
}

JoinResult oracle_joinable(const Trs& trs, const std::vector<Term>& branches,
                           const std::vector<ShapeLabel>& labels, const Budget& budget) {
  validate_budget(budget);
  require_branches(branches, labels);
  for (const Term& b : branches) validate_term(trs.signature(), b);

  std::vector<OracleCone> cones;
  cones.reserve(branches.size());
  for (std::size_t i = 0; i < branches.size(); ++i)
    cones.push_back(oracle_cone(trs, branches[i], labels[i], budget));

  for (const Term& u : cones[0].terms) {
    bool everywhere = true;
    for (std::size_t i = 1; i < cones.size() && everywhere; ++i)
      everywhere = std::find(cones[i].terms.begin(), cones[i].terms.end(), u) !=
                   cones[i].terms.end();
    if (everywhere) {
      JoinResult r;
      r.decision = Decision::yes;
      r.witness = u;
      r.note = "level enumeration met in every cone";
      return r;
    }
  }
  JoinResult r;
  const bool all_complete =
      std::all_of(cones.begin(), cones.end(),
                  [](const OracleCone& c) { return c.complete; });
  if (all_complete) {
    r.decision = Decision::no;
    r.note = "exhaustive level enumeration found no shared term";
  } else {
    r.decision = Decision::unknown;
    r.note = "level enumeration was truncated before a shared term appeared";
  }
  return r;
}

ShapeCheckResult check_shape_on_trs(const Trs& trs, const DiamondShape& shape,
                                    const std::vector<Term>& peaks,
                                    const Budget& budget) {
  for (const Term& peak : peaks) {
    if (!peak.is_ground()) throw std::invalid_argument("peaks must be ground");
    validate_term(trs.signature(), peak);
  }

  const RawCheck raw = check_with(trs_successors(trs), shape, peaks, budget);

  ShapeCheckResult r;
  r.verdict = raw.verdict;
  r.peaks_checked = raw.peaks_checked;
  switch (raw.verdict) {
    case ShapeVerdict::holds:
      r.exact = false;
      r.note = "all " + plural(raw.tuples_checked, "successor tuple") + " over " +
               plural(raw.peaks_checked, "peak") + " join";
      break;
    case ShapeVerdict::unknown:
      r.exact = false;
      r.note = "no definite failure among " + plural(raw.tuples_checked, "tuple") +
               ", but some cone hit the budget";
      break;
    case ShapeVerdict::counterexample: {
      r.exact = true;
      ShapeCounterexample cex{raw.cex->peak, raw.cex->branches, {}, raw.cex->reason};
      const auto edges = one_step_rewrites(trs, cex.peak);
      for (const Term& b : cex.branches) {
        const RewriteEdge* found = nullptr;
        for (const RewriteEdge& e : edges)
          if (e.target == b) {
            found = &e;
            break;
          }
        if (!found) throw std::logic_error("counterexample branch is not a successor");
        RewriteTrace trace;
        trace.terms = {cex.peak, b};
        trace.steps = {RewriteTrace::Step{found->rule_index, found->position}};
        cex.branch_evidence.push_back(std::move(trace));
      }
      r.counterexample = std::move(cex);
      r.note = "definite failure after " + plural(raw.tuples_checked, "tuple check");
      break;
    }
  }
  return r;
}

ShapeCheckResult check_shape_on_derived(DerivedRelation& rel, const DiamondShape& shape,
                                        bool cross_check) {
  if (shape.labels.empty())
    throw std::invalid_argument("shape needs at least one label");

  ShapeCheckResult r;
  const bool degenerate =
      shape.branch_count() == 1 &&
      (shape.labels[0] == ShapeLabel::star || shape.labels[0] == ShapeLabel::eq);

  if (degenerate) {
    r.verdict = ShapeVerdict::holds;
    r.exact = true;
    r.note = "a single branch under a zero-step label rejoins at itself in any relation";
  } else {
    const ThreeValued& status = rel.termination();
    switch (status.decision) {
      case Decision::yes: {
        r.verdict = ShapeVerdict::holds;
        r.exact = true;
        r.join_witness = Term::app(EncodingConvention::term_symbol);
        r.certificate = status.witness;
        r.note = "every reachable term takes one derived step to the halt sentinel; " +
                 status.note;
        break;
      }
      case Decision::no: {
        r.verdict = ShapeVerdict::counterexample;
        r.exact = true;
        r.cycle = status.cycle;

        const ReachSet& cone = rel.init_cone();
        const Term init = rel.init_term();
        std::vector<Term> candidates;
        for (const Term& u : cone.terms)
          if (u != init) candidates.push_back(u);
        const std::size_t n = shape.branch_count();
        if (candidates.empty() || (n >= 2 && candidates.size() < 2))
          throw std::logic_error("reachable cone is too thin for a counterexample");

        std::vector<Term> branches;
        if (n == 1)
          branches.push_back(candidates[0]);
        else if (candidates.size() >= n)
          branches.assign(candidates.begin(),
                          candidates.begin() + static_cast<std::ptrdiff_t>(n));
        else
          for (std::size_t i = 0; i < n; ++i) branches.push_back(candidates[i % 2]);

        std::vector<RewriteTrace> evidence;
        for (const Term& b : branches) {
          ThreeValued path = reaches_plus(rel.trs(), init, b, rel.budget());
          if (path.decision != Decision::yes || !path.witness)
            throw std::logic_error("cone member was not rediscovered by search");
          evidence.push_back(std::move(*path.witness));
        }

        const bool needs_step =
            std::any_of(shape.labels.begin(), shape.labels.end(), [](ShapeLabel l) {
              return l == ShapeLabel::plus || l == ShapeLabel::one;
            });
        std::string reason =
            "no branch has a derived successor, because the halt sentinel is unreachable";
        reason += needs_step
                      ? ", so labels demanding a step cannot be satisfied"
                      : ", so each zero-step cone is a single branch and the branches differ";

        r.counterexample =
            ShapeCounterexample{init, std::move(branches), std::move(evidence),
                                std::move(reason)};
        r.note = status.note;
        break;
      }
      case Decision::unknown:
        r.verdict = ShapeVerdict::unknown;
        r.exact = false;
        r.note = "termination undecided: " + status.note;
        break;
    }
  }

  if (cross_check) {
    const ReachSet& cone = rel.init_cone();
    const RawCheck direct = check_with(
        [&rel](const Term& t) { return rel.successors(t); }, shape, cone.terms,
        rel.budget());
    const bool contradiction =
        (r.verdict == ShapeVerdict::holds && direct.verdict == ShapeVerdict::counterexample) ||
        (r.verdict == ShapeVerdict::counterexample && direct.verdict == ShapeVerdict::holds);
    if (contradiction)
      throw std::logic_error("bounded direct check contradicts the exact verdict");
    r.peaks_checked = direct.peaks_checked;
    r.note += "; direct check over " + plural(direct.peaks_checked, "reachable peak") +
              ": " + verdict_to_string(direct.verdict);
  }
  return r;
}

ShapeCheckResult check_shape_on_derived(const TuringMachine& tm, const DiamondShape& shape,
                                        const Budget& budget, bool cross_check) {
  DerivedRelation rel(tm, budget);
  return check_shape_on_derived(rel, shape, cross_check);
}

}  // namespace trsd
