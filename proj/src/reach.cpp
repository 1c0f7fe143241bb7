#include "trsd/reach.hpp"

#include <algorithm>
#include <stdexcept>

namespace trsd {

namespace {

struct ExploreState {
  std::vector<Term> terms;
  std::vector<std::size_t> depth;
  std::vector<std::ptrdiff_t> parent;  // -1 for the seed
  std::vector<RewriteTrace::Step> via;
  std::map<Term, std::size_t> index;
  std::vector<ReachGraph::Edge> edges;
  bool complete = true;
  std::size_t depth_reached = 0;
  std::string note;
  bool hit = false;
  std::size_t hit_from = 0;
  RewriteTrace::Step hit_step{0, {}};
};

void mark_truncated(ExploreState& st, const std::string& msg) {
  st.complete = false;
  if (st.note.empty()) st.note = msg;
}

std::string plural(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

/// Breadth-first closure. Expands every kept term, so a complete result
/// is genuinely closed under rewriting. When `target` is given, stops at
/// the first generated successor equal to it; reaching the seed again
/// counts, sitting at it does not.
ExploreState explore(const Trs& trs, const Term& seed, const Budget& budget,
                     const Term* target, bool record_edges) {
  validate_budget(budget);
  if (!seed.is_ground())
    throw std::invalid_argument("exploration needs a ground seed term");
  validate_term(trs.signature(), seed);

  ExploreState st;
  st.terms.push_back(seed);
  st.depth.push_back(0);
  st.parent.push_back(-1);
  st.via.push_back(RewriteTrace::Step{0, {}});
  st.index.emplace(seed, 0);

  for (std::size_t qi = 0; qi < st.terms.size(); ++qi) {
    const Term current = st.terms[qi];  // copy: the vector grows below
    const std::size_t d = st.depth[qi];
    for (const RewriteEdge& e : one_step_rewrites(trs, current)) {
      if (target && e.target == *target) {
        st.hit = true;
        st.hit_from = qi;
        st.hit_step = RewriteTrace::Step{e.rule_index, e.position};
        return st;
      }
      if (auto found = st.index.find(e.target); found != st.index.end()) {
        if (record_edges)
          st.edges.push_back(ReachGraph::Edge{qi, found->second, e.rule_index, e.position});
        continue;
      }
      if (d + 1 > budget.max_rewrite_steps) {
        mark_truncated(st, "step limit reached (max_rewrite_steps=" +
                               std::to_string(budget.max_rewrite_steps) + ")");
        continue;
      }
      if (st.terms.size() >= budget.max_distinct_terms) {
        mark_truncated(st, "term limit reached (max_distinct_terms=" +
                               std::to_string(budget.max_distinct_terms) + ")");
        continue;
      }
      if (e.target.node_count() > budget.max_term_size) {
        mark_truncated(st, "size limit reached (max_term_size=" +
                               std::to_string(budget.max_term_size) + ")");
        continue;
      }
      const std::size_t id = st.terms.size();
      st.index.emplace(e.target, id);
      st.terms.push_back(e.target);
      st.depth.push_back(d + 1);
      st.parent.push_back(static_cast<std::ptrdiff_t>(qi));
      st.via.push_back(RewriteTrace::Step{e.rule_index, e.position});
      st.depth_reached = std::max(st.depth_reached, d + 1);
      if (record_edges) st.edges.push_back(ReachGraph::Edge{qi, id, e.rule_index, e.position});
    }
  }
  return st;
}

ReachSet to_reach_set(ExploreState&& st) {
  ReachSet out;
  out.terms = std::move(st.terms);
  out.complete = st.complete;
  out.depth_reached = st.depth_reached;
  out.note = std::move(st.note);
  return out;
}

RewriteTrace hit_trace(const ExploreState& st, const Term& target) {
  std::vector<std::size_t> chain;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(st.hit_from); i >= 0;
       i = st.parent[static_cast<std::size_t>(i)])
    chain.push_back(static_cast<std::size_t>(i));
  std::reverse(chain.begin(), chain.end());

  RewriteTrace trace;
  for (std::size_t idx : chain) trace.terms.push_back(st.terms[idx]);
  for (std::size_t k = 1; k < chain.size(); ++k) trace.steps.push_back(st.via[chain[k]]);
  trace.steps.push_back(st.hit_step);
  trace.terms.push_back(target);
  return trace;
}

}  // namespace

void validate_budget(const Budget& budget) {
  if (budget.max_rewrite_steps == 0)
    throw std::invalid_argument("max_rewrite_steps must be positive");
  if (budget.max_distinct_terms == 0)
    throw std::invalid_argument("max_distinct_terms must be positive");
  if (budget.max_term_size == 0)
    throw std::invalid_argument("max_term_size must be positive");
}

bool ReachSet::contains(const Term& t) const {
  return std::find(terms.begin(), terms.end(), t) != terms.end();
}

ReachSet reachable_terms(const Trs& trs, const Term& seed, const Budget& budget) {
  return to_reach_set(explore(trs, seed, budget, nullptr, false));
}

ReachGraph reachable_graph(const Trs& trs, const Term& seed, const Budget& budget) {
  ExploreState st = explore(trs, seed, budget, nullptr, true);
  ReachGraph out;
  out.nodes = std::move(st.terms);
  out.edges = std::move(st.edges);
  out.complete = st.complete;
  out.depth_reached = st.depth_reached;
  out.note = std::move(st.note);
  return out;
}

ThreeValued reaches_plus(const Trs& trs, const Term& from, const Term& to,
                         const Budget& budget) {
  if (!to.is_ground())
    throw std::invalid_argument("reachability target must be ground");
  validate_term(trs.signature(), to);

  ExploreState st = explore(trs, from, budget, &to, false);
  ThreeValued out;
  if (st.hit) {
    out.decision = Decision::yes;
    out.witness = hit_trace(st, to);
    out.note = "witness path of length " + std::to_string(out.witness->length());
    return out;
  }
  const bool complete = st.complete;
  const std::string why = st.note;
  out.closure = to_reach_set(std::move(st));
  if (complete) {
    out.decision = Decision::no;
    out.note = "complete closure of " + plural(out.closure->terms.size(), "term") +
               " does not step to the target";
  } else {
    out.decision = Decision::unknown;
    out.note = "target not seen before truncation: " + why;
  }
  return out;
}

ThreeValued terminates_via_trs(const TuringMachine& tm, const Budget& budget) {
  validate_budget(budget);
  const Trs trs = compile_trs(tm);
  const Term init = Term::app(EncodingConvention::init_symbol);
  const Term halt = Term::app(EncodingConvention::term_symbol);

  const RunOutcome machine = run(tm, budget.max_rewrite_steps);
  ThreeValued via_trs = reaches_plus(trs, init, halt, budget);

  ThreeValued out;
  switch (machine.kind) {
    case RunOutcome::Kind::halted: {
      if (via_trs.decision == Decision::no)
        throw std::logic_error(
            "machine halts but the compiled closure excludes the halt sentinel");
      out.decision = Decision::yes;
      if (via_trs.decision == Decision::yes) {
        out.witness = std::move(via_trs.witness);
        out.note = "machine halts after " + plural(machine.steps, "step") +
                   "; witness found by search";
      } else {
        RewriteTrace w = simulation_trace(tm, initial_config(tm), machine.steps);
        const std::size_t init_rule = trs.rules().size() - 1;
        const std::size_t halt_rule = trs.rules().size() - 2;
        w.terms.insert(w.terms.begin(), init);
        w.steps.insert(w.steps.begin(), RewriteTrace::Step{init_rule, {}});
        auto finished = rewrite_at(trs, w.terms.back(), {}, halt_rule);
        if (!finished) throw std::logic_error("halt rule failed to match a final encoding");
        w.steps.push_back(RewriteTrace::Step{halt_rule, {}});
        w.terms.push_back(std::move(*finished));
        out.witness = std::move(w);
        out.note = "machine halts after " + plural(machine.steps, "step") +
                   "; witness constructed by simulation";
      }
      return out;
    }
    case RunOutcome::Kind::cycled: {
      if (via_trs.decision == Decision::yes)
        throw std::logic_error(
            "machine repeats a configuration but the compiled system reaches the halt sentinel");
      out.decision = Decision::no;
      out.cycle = CycleCertificate{machine.cycle_prefix, machine.cycle_period};
      if (via_trs.decision == Decision::no) out.closure = std::move(via_trs.closure);
      out.note = "machine repeats a configuration after " +
                 plural(machine.cycle_prefix, "step") + " with period " +
                 std::to_string(machine.cycle_period);
      return out;
    }
    case RunOutcome::Kind::exceeded:
      break;
  }
  if (via_trs.decision == Decision::yes)
    throw std::logic_error(
        "compiled system reaches the halt sentinel but the machine run exceeded its budget");
  if (via_trs.decision == Decision::no) {
    out.decision = Decision::no;
    out.closure = std::move(via_trs.closure);
    out.note = "complete closure of " + plural(out.closure->terms.size(), "term") +
               " excludes the halt sentinel";
  } else {
    out.decision = Decision::unknown;
    out.closure = std::move(via_trs.closure);
    out.note = "machine budget exceeded and " + via_trs.note;
  }
  return out;
}

DerivedRelation::DerivedRelation(TuringMachine tm, Budget budget)
    : tm_(std::move(tm)), budget_(budget), trs_(compile_trs(tm_)) {
  validate_budget(budget_);
}

const ThreeValued& DerivedRelation::termination() {
  if (!termination_) termination_ = terminates_via_trs(tm_, budget_);
  return *termination_;
}

const ReachSet& DerivedRelation::init_cone() {
  if (!init_cone_) init_cone_ = reachable_terms(trs_, init_term(), budget_);
  return *init_cone_;
}

const ReachSet& DerivedRelation::star_cone(const Term& t) {
  auto it = star_cones_.find(t);
  if (it == star_cones_.end())
    it = star_cones_.emplace(t, reachable_terms(trs_, t, budget_)).first;
  return it->second;
}

ReachSet DerivedRelation::successors(const Term& t) {
  if (!t.is_ground())
    throw std::invalid_argument("derived relation is over ground terms");
  validate_term(trs_.signature(), t);

  ReachSet out;
  out.complete = true;

  if (t == init_term()) {
    // Everything init reaches in one or more steps. Nothing rewrites to
    // init itself, so dropping the seed is exact.
    const ReachSet& cone = init_cone();
    for (const Term& u : cone.terms)
      if (u != t) out.terms.push_back(u);
    out.complete = cone.complete;
    out.depth_reached = cone.depth_reached;
    out.note = cone.note;
    return out;
  }

  const ReachSet& cone = init_cone();
  if (!cone.contains(t)) {
    if (cone.complete) return out;  // unreachable from init: no successors
    out.complete = false;
    out.note = "reachability from init is unresolved: " + cone.note;
    return out;
  }

  switch (termination().decision) {
    case Decision::no:
      return out;  // halt sentinel unreachable: the second clause never fires
    case Decision::yes:
      return star_cone(t);
    case Decision::unknown:
      out.complete = false;
      out.note = "termination is unresolved: " + termination().note;
      return out;
  }
  return out;
}

}  // namespace trsd
