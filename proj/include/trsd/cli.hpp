#ifndef TRSD_CLI_HPP
#define TRSD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "trsd/reach.hpp"
#include "trsd/term.hpp"

namespace trsd {

/// Dispatches one command-line invocation (`args` excludes the program
/// name) and writes its report to `out` and diagnostics to `err`.
/// Exit codes: 0 success or property holds, 1 definite counterexample,
/// 2 undecided within budget, 3 usage, file, or format errors.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

/// DOT rendering of the bounded reduction graph from a ground seed:
/// one node per reachable term, one edge per one-step rewrite, annotated
/// with rule index and position. Byte-identical for identical inputs.
std::string export_graph(const Trs& trs, const Term& seed, const Budget& budget);

}  // namespace trsd

#endif  // TRSD_CLI_HPP
