#ifndef TRSD_REPORT_HPP
#define TRSD_REPORT_HPP

#include <json.hpp>
#include <string>

#include "trsd/diamond.hpp"
#include "trsd/reach.hpp"
#include "trsd/term.hpp"
#include "trsd/turing.hpp"

namespace trsd {

/// Structured reports use this ordered document type so key order, and
/// with it the serialized bytes, is stable across runs.
using Json = nlohmann::ordered_json;

/// "root" for the empty position, else dot-joined indices like "0.1".
std::string position_to_string(const Position& pos);

/// "1 step", "3 steps".
std::string count_word(std::size_t n, const std::string& noun);

std::string decision_to_string(Decision decision);

/// Multi-line rendering, one term per line with the rule and position
/// that produced it:
///   init
///   -[rule 6 @ root]-> st_s(nil,nil)
std::string trace_to_text(const RewriteTrace& trace, const std::string& indent);

Json trace_to_json(const RewriteTrace& trace);
Json budget_to_json(const Budget& budget);
Json config_to_json(const Configuration& k);

/// Verdict block shared by reachability-style queries: decision, note,
/// witness trace, closure summary, cycle certificate.
std::string three_valued_to_text(const ThreeValued& v);
Json three_valued_to_json(const ThreeValued& v);

std::string check_result_to_text(const ShapeCheckResult& r);
Json check_result_to_json(const ShapeCheckResult& r);

}  // namespace trsd

#endif  // TRSD_REPORT_HPP
