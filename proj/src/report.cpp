#include "trsd/report.hpp"

#include "trsd/formats.hpp"

namespace trsd {

std::string position_to_string(const Position& pos) {
  if (pos.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(pos[i]);
  }
  return out;
}

std::string count_word(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string decision_to_string(Decision decision) {
  switch (decision) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::unknown: return "unknown";
  }
  return "?";
}

std::string trace_to_text(const RewriteTrace& trace, const std::string& indent) {
  std::string out = indent + format_term(trace.terms.front()) + "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i)
    out += indent + "-[rule " + std::to_string(trace.steps[i].rule_index) + " @ " +
           position_to_string(trace.steps[i].position) + "]-> " +
           format_term(trace.terms[i + 1]) + "\n";
  return out;
}

Json trace_to_json(const RewriteTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json step;
    step["rule"] = s.rule_index;
    step["position"] = s.position;
    steps.push_back(std::move(step));
  }
  Json terms = Json::array();
  for (const Term& t : trace.terms) terms.push_back(format_term(t));
  Json out;
  out["terms"] = std::move(terms);
  out["steps"] = std::move(steps);
  return out;
}

Json budget_to_json(const Budget& budget) {
  Json out;
  out["max_rewrite_steps"] = budget.max_rewrite_steps;
  out["max_distinct_terms"] = budget.max_distinct_terms;
  out["max_term_size"] = budget.max_term_size;
  return out;
}

Json config_to_json(const Configuration& k) {
  Json out;
  out["state"] = k.state;
  out["position"] = k.position.str();
  Json cells = Json::array();
  for (const auto& [index, symbol] : k.tape) {
    Json cell;
    cell["index"] = index.str();
    cell["symbol"] = symbol;
    cells.push_back(std::move(cell));
  }
  out["cells"] = std::move(cells);
  return out;
}

std::string three_valued_to_text(const ThreeValued& v) {
  std::string out = "decision: " + decision_to_string(v.decision) + "\n";
  if (!v.note.empty()) out += "note: " + v.note + "\n";
  if (v.witness) {
    out += "witness (" + count_word(v.witness->length(), "step") + "):\n";
    out += trace_to_text(*v.witness, "  ");
  }
  if (v.cycle)
    out += "cycle: prefix " + std::to_string(v.cycle->prefix) + ", period " +
           std::to_string(v.cycle->period) + "\n";
  if (v.closure) {
    out += "closure: " + count_word(v.closure->terms.size(), "term") +
           (v.closure->complete ? ", complete" : ", truncated") + "\n";
  }
  return out;
}

Json three_valued_to_json(const ThreeValued& v) {
  Json out;
  out["decision"] = decision_to_string(v.decision);
  out["note"] = v.note;
  if (v.witness) out["witness"] = trace_to_json(*v.witness);
  if (v.cycle) {
    Json cyc;
    cyc["prefix"] = v.cycle->prefix;
    cyc["period"] = v.cycle->period;
    out["cycle"] = std::move(cyc);
  }
  if (v.closure) {
    Json cl;
    cl["size"] = v.closure->terms.size();
    cl["complete"] = v.closure->complete;
    Json terms = Json::array();
    for (const Term& t : v.closure->terms) terms.push_back(format_term(t));
    cl["terms"] = std::move(terms);
    if (!v.closure->note.empty()) cl["note"] = v.closure->note;
    out["closure"] = std::move(cl);
  }
  return out;
}

std::string check_result_to_text(const ShapeCheckResult& r) {
  std::string out = "verdict: " + verdict_to_string(r.verdict) +
                    (r.verdict == ShapeVerdict::unknown ? "" : r.exact ? " (exact)" : " (bounded)") +
                    "\n";
  if (!r.note.empty()) out += "note: " + r.note + "\n";
  if (r.join_witness) out += "join witness: " + format_term(*r.join_witness) + "\n";
  if (r.certificate) {
    out += "certificate (" + count_word(r.certificate->length(), "step") + "):\n";
    out += trace_to_text(*r.certificate, "  ");
  }
  if (r.cycle)
    out += "cycle: prefix " + std::to_string(r.cycle->prefix) + ", period " +
           std::to_string(r.cycle->period) + "\n";
  if (r.counterexample) {
    const ShapeCounterexample& cex = *r.counterexample;
    out += "peak: " + format_term(cex.peak) + "\n";
    for (std::size_t i = 0; i < cex.branches.size(); ++i) {
      out += "branch " + std::to_string(i + 1) + ": " + format_term(cex.branches[i]) + "\n";
      if (i < cex.branch_evidence.size()) {
        out += "  via (" + count_word(cex.branch_evidence[i].length(), "step") + "):\n";
        out += trace_to_text(cex.branch_evidence[i], "    ");
      }
    }
    out += "reason: " + cex.reason + "\n";
  }
  if (r.peaks_checked) out += "peaks checked: " + std::to_string(r.peaks_checked) + "\n";
  return out;
}

Json check_result_to_json(const ShapeCheckResult& r) {
  Json out;
  out["verdict"] = verdict_to_string(r.verdict);
  out["exact"] = r.exact;
  out["note"] = r.note;
  if (r.join_witness) out["join_witness"] = format_term(*r.join_witness);
  if (r.certificate) out["certificate"] = trace_to_json(*r.certificate);
  if (r.cycle) {
    Json cyc;
    cyc["prefix"] = r.cycle->prefix;
    cyc["period"] = r.cycle->period;
    out["cycle"] = std::move(cyc);
  }
  if (r.counterexample) {
    const ShapeCounterexample& cex = *r.counterexample;
    Json c;
    c["peak"] = format_term(cex.peak);
    Json branches = Json::array();
    for (const Term& b : cex.branches) branches.push_back(format_term(b));
    c["branches"] = std::move(branches);
    Json evidence = Json::array();
    for (const RewriteTrace& t : cex.branch_evidence) evidence.push_back(trace_to_json(t));
    c["evidence"] = std::move(evidence);
    c["reason"] = cex.reason;
    out["counterexample"] = std::move(c);
  }
  out["peaks_checked"] = r.peaks_checked;
  return out;
}

}  // namespace trsd
