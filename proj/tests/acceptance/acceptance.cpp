// Acceptance checks for the whole pipeline: simulation fidelity of the
// compiled systems, conservativity of their closures, the termination
// bridge, exact shape verdicts on decidable instances, agreement with an
// independent joinability oracle on a random corpus, label-lattice
// monotonicity of witnesses, and determinism of every emitted artifact.
// Prints one PASS/FAIL line per criterion; exits nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trsd/cli.hpp"
#include "trsd/diamond.hpp"
#include "trsd/encode.hpp"
#include "trsd/formats.hpp"
#include "trsd/reach.hpp"
#include "trsd/term.hpp"
#include "trsd/turing.hpp"

#include "../helpers.hpp"

namespace {

using namespace trsd;
using trsd::tests::corpus_machine;
using trsd::tests::machine_path;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(const std::string& detail) { return {false, detail}; }
Outcome pass(const std::string& detail) { return {true, detail}; }

// ---------------------------------------------------------------------------
// 1. Every machine step of the corpus walkers is realized by a short,
//    replayable rewrite trace whose terms never leave the pre/post pair.

Outcome simulation_fidelity() {
  const auto started = std::chrono::steady_clock::now();
  std::size_t steps_checked = 0;

  for (const char* name : {"halt1.tm", "loop2.tm", "count3.tm"}) {
    const TuringMachine tm = corpus_machine(name);
    const Trs trs = compile_trs(tm);

    std::vector<Configuration> path{initial_config(tm)};
    for (int i = 0; i < 15; ++i) {
      const auto next = step(tm, path.back());
      if (!next) break;
      path.push_back(*next);
    }

    std::set<std::string> seen;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      const Configuration& pre = path[j];
      const Configuration& post = path[j + 1];
      if (!seen.insert(config_to_text(pre)).second) continue;

      const std::string where =
          std::string(name) + " step " + std::to_string(j) + ": ";
      const RewriteTrace trace = simulation_trace(tm, pre, 1);
      if (trace.length() > 3)
        return fail(where + "one machine step took " +
                    std::to_string(trace.length()) + " rewrite steps");
      if (!trace.replays(trs)) return fail(where + "trace does not replay");
      if (trace.terms.front() != encode_config(tm, pre))
        return fail(where + "trace does not start at the encoded configuration");

      for (const Term& t : trace.terms) {
        const auto k = decode_term(tm, t);
        if (!k) return fail(where + format_term(t) + " does not decode");
        if (!(*k == pre.normalized() || *k == post.normalized()))
          return fail(where + format_term(t) +
                      " decodes outside the pre/post pair");
      }
      if (*decode_term(tm, trace.terms.back()) != post.normalized())
        return fail(where + "trace endpoint is not the successor configuration");

      // The padded endpoint stands for the successor configuration; the
      // rules only ever add padding, so the trimmed encoding itself is not
      // re-reachable once a side has been padded.
      const ThreeValued r =
          reaches_plus(trs, encode_config(tm, pre), trace.terms.back(), Budget{});
      if (r.decision != Decision::yes)
        return fail(where + "reaches_plus does not confirm the step");
      if (!r.witness || !r.witness->replays(trs))
        return fail(where + "reaches_plus witness does not replay");

      ++steps_checked;
    }
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  if (elapsed >= 10000)
    return fail("checks passed but took " + std::to_string(elapsed) + " ms");
  return pass(std::to_string(steps_checked) + " machine steps across 3 machines in " +
              std::to_string(elapsed) + " ms (bound 10 s)");
}

// ---------------------------------------------------------------------------
// 2. Complete closures of the compiled halting and cycling machines hold
//    only ground terms: the sentinels plus encodings of machine-reachable
//    configurations.

Outcome conservativity() {
  std::size_t terms_checked = 0;

  for (const char* name : {"halt1.tm", "loop2.tm"}) {
    const TuringMachine tm = corpus_machine(name);
    const Trs trs = compile_trs(tm);

    std::set<std::string> reachable_configs;
    Configuration k = initial_config(tm);
    std::set<std::string> visited;
    while (visited.insert(config_to_text(k)).second) {
      reachable_configs.insert(config_to_text(k.normalized()));
      const auto next = step(tm, k);
      if (!next) break;
      k = *next;
    }

    const ReachSet closure = reachable_terms(trs, Term::app("init"), Budget{});
    if (!closure.complete)
      return fail(std::string(name) + ": closure is not complete");

    for (const Term& t : closure.terms) {
      const std::string where = std::string(name) + ": " + format_term(t);
      if (!t.is_ground()) return fail(where + " is not ground");
      if (t == Term::app("init") || t == Term::app("term")) {
        ++terms_checked;
        continue;
      }
      const auto decoded = decode_term(tm, t);
      if (!decoded) return fail(where + " is neither a sentinel nor a configuration");
      if (!reachable_configs.count(config_to_text(*decoded)))
        return fail(where + " decodes to the unreachable configuration " +
                    config_to_text(*decoded));
      ++terms_checked;
    }
  }

  return pass(std::to_string(terms_checked) + " closure terms across 2 machines");
}

// ---------------------------------------------------------------------------
// 3. The termination bridge: machine verdicts through the compiled system,
//    with the run-based and closure-based evidence cross-validated.

Outcome termination_equivalence() {
  const Budget budget{200, 500, 10000};
  const std::pair<const char*, Decision> expected[] = {
      {"halt1.tm", Decision::yes},
      {"count3.tm", Decision::yes},
      {"loop2.tm", Decision::no},
      {"loop1.tm", Decision::unknown},
  };

  for (const auto& [name, want] : expected) {
    const TuringMachine tm = corpus_machine(name);
    const Trs trs = compile_trs(tm);
    ThreeValued r;
    try {
      r = terminates_via_trs(tm, budget);
    } catch (const std::logic_error& e) {
      return fail(std::string(name) + ": certificates disagree: " + e.what());
    }
    if (r.decision != want)
      return fail(std::string(name) + ": unexpected verdict '" + r.note + "'");

    const RunOutcome run_direct = run(tm, budget.max_rewrite_steps);
    switch (r.decision) {
      case Decision::yes:
        if (run_direct.kind != RunOutcome::Kind::halted)
          return fail(std::string(name) + ": Yes but the machine run did not halt");
        if (!r.witness || !r.witness->replays(trs))
          return fail(std::string(name) + ": Yes without a replayable witness");
        if (format_term(r.witness->terms.front()) != "init" ||
            format_term(r.witness->terms.back()) != "term")
          return fail(std::string(name) + ": witness does not run init to term");
        break;
      case Decision::no:
        if (run_direct.kind != RunOutcome::Kind::cycled)
          return fail(std::string(name) + ": No but the machine run did not cycle");
        if (!r.cycle || r.cycle->prefix != run_direct.cycle_prefix ||
            r.cycle->period != run_direct.cycle_period)
          return fail(std::string(name) + ": cycle certificate mismatch");
        if (r.closure &&
            (!r.closure->complete || r.closure->contains(Term::app("term"))))
          return fail(std::string(name) + ": closure contradicts the No");
        break;
      case Decision::unknown:
        if (run_direct.kind != RunOutcome::Kind::exceeded)
          return fail(std::string(name) + ": Unknown but the machine run decided");
        break;
    }
  }

  return pass("Yes/Yes/No/Unknown as expected, certificates consistent");
}

// ---------------------------------------------------------------------------
// 4. Exact shape verdicts on the decidable instances, for all named shapes
//    plus a four-branch diamond, with the bounded direct check riding along.

Outcome exact_verdicts() {
  const Budget budget{200, 500, 10000};
  auto shapes = named_shapes();
  shapes.emplace_back("1,1,1,1", parse_shape("1,1,1,1"));

  std::size_t combinations = 0;
  for (const auto& [shape_name_, shape] : shapes) {
    for (const char* name : {"halt1.tm", "count3.tm", "loop2.tm", "loop1.tm"}) {
      const TuringMachine tm = corpus_machine(name);
      const std::string where = std::string(name) + " / " + shape_name_ + ": ";
      ShapeCheckResult r;
      try {
        r = check_shape_on_derived(tm, shape, budget, true);
      } catch (const std::logic_error& e) {
        return fail(where + "cross-check contradiction: " + e.what());
      }

      const std::string machine_name(name);
      if (machine_name == "halt1.tm" || machine_name == "count3.tm") {
        if (r.verdict != ShapeVerdict::holds || !r.exact)
          return fail(where + "expected Holds(exact), got '" + r.note + "'");
      } else if (machine_name == "loop2.tm") {
        if (r.verdict != ShapeVerdict::counterexample || !r.exact)
          return fail(where + "expected Counterexample(exact), got '" + r.note + "'");
        if (!r.counterexample) return fail(where + "counterexample without evidence");
        const ShapeCounterexample& cex = *r.counterexample;
        if (cex.branch_evidence.size() != cex.branches.size())
          return fail(where + "evidence does not cover every branch");
        const Trs trs = compile_trs(tm);
        for (std::size_t i = 0; i < cex.branches.size(); ++i) {
          const RewriteTrace& ev = cex.branch_evidence[i];
          if (!ev.replays(trs) || ev.terms.front() != cex.peak ||
              ev.terms.back() != cex.branches[i])
            return fail(where + "branch " + std::to_string(i + 1) +
                        " evidence does not replay peak to branch");
        }
      } else {
        if (r.verdict != ShapeVerdict::unknown)
          return fail(where + "expected Unknown, got '" + r.note + "'");
      }
      ++combinations;
    }
  }

  return pass(std::to_string(combinations) + " machine/shape combinations");
}

// ---------------------------------------------------------------------------
// Random corpus shared by criteria 5 to 7.

const char* kConstNames[] = {"a", "b", "c"};
const char* kUnaryNames[] = {"f", "g"};

struct RandomSystem {
  Trs trs;
  int constants;
  int unaries;
};

Term random_term(std::mt19937& rng, int constants, int unaries, bool allow_var,
                 int depth) {
  std::vector<int> options;
  for (int i = 0; i < constants; ++i) options.push_back(i);
  if (depth > 0)
    for (int i = 0; i < unaries; ++i) options.push_back(constants + i);
  if (allow_var) options.push_back(constants + unaries);

  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  const int choice = options[pick(rng)];
  if (choice < constants) return Term::app(kConstNames[choice]);
  if (choice < constants + unaries)
    return Term::app(kUnaryNames[choice - constants],
                     {random_term(rng, constants, unaries, allow_var, depth - 1)});
  return Term::variable("x");
}

bool mentions_variable(const Term& t) {
  if (t.is_variable()) return true;
  for (const Term& arg : t.args())
    if (mentions_variable(arg)) return true;
  return false;
}

RandomSystem random_system(std::mt19937& rng) {
  std::uniform_int_distribution<int> d_constants(1, 3);
  std::uniform_int_distribution<int> d_unaries(0, 2);
  std::uniform_int_distribution<int> d_rules(1, 3);

  const int constants = d_constants(rng);
  const int unaries = d_unaries(rng);
  const int rule_count = d_rules(rng);

  Signature sig;
  for (int i = 0; i < constants; ++i) sig.add_symbol(kConstNames[i], 0);
  for (int i = 0; i < unaries; ++i) sig.add_symbol(kUnaryNames[i], 1);
  sig.add_variable("x");

  std::vector<Rule> rules;
  for (int i = 0; i < rule_count; ++i) {
    Term lhs = random_term(rng, constants, unaries, true, 2);
    while (lhs.is_variable()) lhs = random_term(rng, constants, unaries, true, 2);
    const Term rhs =
        random_term(rng, constants, unaries, mentions_variable(lhs), 2);
    rules.push_back({lhs, rhs});
  }
  return {Trs(sig, std::move(rules)), constants, unaries};
}

std::vector<Term> ground_peaks(const RandomSystem& sys, std::size_t max_nodes) {
  std::vector<std::vector<Term>> by_size(max_nodes + 1);
  for (int i = 0; i < sys.constants; ++i)
    by_size[1].push_back(Term::app(kConstNames[i]));
  for (std::size_t size = 2; size <= max_nodes; ++size)
    for (int u = 0; u < sys.unaries; ++u)
      for (const Term& t : by_size[size - 1])
        by_size[size].push_back(Term::app(kUnaryNames[u], {t}));

  std::vector<Term> out;
  for (const auto& bucket : by_size)
    out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

// ---------------------------------------------------------------------------
// 5. The production shape checker agrees with an exhaustive sweep built on
//    the independent joinability oracle.

ShapeVerdict oracle_shape_verdict(const Trs& trs, const std::vector<ShapeLabel>& labels,
                                  const std::vector<Term>& peaks, const Budget& budget) {
  bool saw_unknown = false;
  for (const Term& peak : peaks) {
    const std::vector<Term> succ = one_step_successors(trs, peak);
    if (succ.empty()) continue;

    std::vector<std::size_t> index(labels.size(), 0);
    for (;;) {
      std::vector<Term> branches;
      branches.reserve(labels.size());
      for (const std::size_t i : index) branches.push_back(succ[i]);

      const JoinResult joined = oracle_joinable(trs, branches, labels, budget);
      if (joined.decision == Decision::no) return ShapeVerdict::counterexample;
      if (joined.decision == Decision::unknown) saw_unknown = true;

      std::size_t digit = 0;
      while (digit < index.size() && ++index[digit] == succ.size())
        index[digit++] = 0;
      if (digit == index.size()) break;
    }
  }
  return saw_unknown ? ShapeVerdict::unknown : ShapeVerdict::holds;
}

Outcome oracle_equivalence(const std::vector<RandomSystem>& corpus) {
  const Budget budget{6, 500, 60};
  const std::vector<DiamondShape> shapes = {
      parse_shape("*,*"), parse_shape("1,1"), parse_shape("=,="), parse_shape("*,=")};

  std::size_t checks = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const RandomSystem& sys = corpus[n];
    const std::vector<Term> peaks = ground_peaks(sys, 5);
    for (const DiamondShape& shape : shapes) {
      const ShapeVerdict checked =
          check_shape_on_trs(sys.trs, shape, peaks, budget).verdict;
      const ShapeVerdict swept =
          oracle_shape_verdict(sys.trs, shape.labels, peaks, budget);
      if (checked != swept)
        return fail("system " + std::to_string(n) + " shape " +
                    shape_to_string(shape) + ": checker says " +
                    verdict_to_string(checked) + ", oracle sweep says " +
                    verdict_to_string(swept));
      ++checks;
    }
  }

  return pass(std::to_string(checks) + " verdicts over " +
              std::to_string(corpus.size()) + " random systems");
}

// ---------------------------------------------------------------------------
// 6. Witnesses travel up the label lattice: a one witness is an eq, plus,
//    and star witness; eq and plus witnesses are star witnesses.

Outcome label_lattice(const std::vector<RandomSystem>& corpus) {
  const Budget budget{5, 200, 40};
  // Same size cap as the join budget, so the validating searches walk the
  // same admitted universe and cannot miss a witness the join admitted;
  // the step and term limits only need to exceed the join's.
  const Budget wide{8, 2000, 40};

  auto in_eq_cone = [](const Trs& trs, const Term& from, const Term& target) {
    if (from == target) return true;
    const auto succ = one_step_successors(trs, from);
    return std::find(succ.begin(), succ.end(), target) != succ.end();
  };
  auto in_star_cone = [&](const Trs& trs, const Term& from, const Term& target) {
    return reachable_terms(trs, from, wide).contains(target);
  };
  auto in_plus_cone = [&](const Trs& trs, const Term& from, const Term& target) {
    return reaches_plus(trs, from, target, wide).decision == Decision::yes;
  };

  std::size_t witnesses = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const Trs& trs = corpus[n].trs;
    for (const Term& peak : ground_peaks(corpus[n], 5)) {
      const std::vector<Term> succ = one_step_successors(trs, peak);
      for (const Term& left : succ) {
        for (const Term& right : succ) {
          const std::vector<Term> branches{left, right};
          const std::string where = "system " + std::to_string(n) + " peak " +
                                    format_term(peak) + ": ";

          const JoinResult one = joinable(
              trs, branches, {ShapeLabel::one, ShapeLabel::one}, budget);
          if (one.decision == Decision::yes) {
            for (const Term& branch : branches) {
              if (!in_eq_cone(trs, branch, *one.witness))
                return fail(where + "one witness fails under eq");
              if (!in_plus_cone(trs, branch, *one.witness))
                return fail(where + "one witness fails under plus");
              if (!in_star_cone(trs, branch, *one.witness))
                return fail(where + "one witness fails under star");
            }
            ++witnesses;
          }

          for (const ShapeLabel label : {ShapeLabel::eq, ShapeLabel::plus}) {
            const JoinResult r = joinable(trs, branches, {label, label}, budget);
            if (r.decision != Decision::yes) continue;
            for (const Term& branch : branches)
              if (!in_star_cone(trs, branch, *r.witness))
                return fail(where + label_to_string(label) +
                            " witness fails under star");
            ++witnesses;
          }
        }
      }
    }
  }

  return pass(std::to_string(witnesses) + " witnesses promoted without loss");
}

// ---------------------------------------------------------------------------
// 7. Determinism and round trips: reports, DOT, system text, and the
//    configuration codec.

Outcome determinism(const std::vector<RandomSystem>& corpus, std::mt19937& rng) {
  const std::vector<std::vector<std::string>> invocations = {
      {"compile", machine_path("count3.tm")},
      {"simulate", machine_path("count3.tm"), "--json"},
      {"check", "--machine", machine_path("halt1.tm"), "--shape", "diamond", "--json"},
      {"check", "--machine", machine_path("loop2.tm"), "--shape", "local-confluence"},
  };
  for (const auto& args : invocations) {
    std::ostringstream out1, err1, out2, err2;
    const int code1 = run_command(args, out1, err1);
    const int code2 = run_command(args, out2, err2);
    if (code1 != code2 || out1.str() != out2.str() || err1.str() != err2.str())
      return fail("two runs of '" + args[0] + "' differ");
  }

  const Trs halt1 = compile_trs(corpus_machine("halt1.tm"));
  const std::string dot1 = export_graph(halt1, Term::app("init"), Budget{});
  const std::string dot2 = export_graph(halt1, Term::app("init"), Budget{});
  if (dot1 != dot2) return fail("two DOT exports differ");

  for (const char* name : {"halt1.tm", "loop1.tm", "loop2.tm", "count3.tm"}) {
    const std::string text = trs_to_text(compile_trs(corpus_machine(name)));
    if (trs_to_text(parse_trs(text)) != text)
      return fail(std::string(name) + ": compiled system text does not round trip");
  }
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const std::string text = trs_to_text(corpus[n].trs);
    if (trs_to_text(parse_trs(text)) != text)
      return fail("random system " + std::to_string(n) + " does not round trip");
  }

  const char* machines[] = {"halt1.tm", "loop1.tm", "loop2.tm", "count3.tm"};
  std::uniform_int_distribution<int> d_pos(-20, 20);
  std::uniform_int_distribution<int> d_cells(0, 4);
  for (int i = 0; i < 1000; ++i) {
    const TuringMachine tm = corpus_machine(machines[i % 4]);
    std::uniform_int_distribution<std::size_t> d_state(0, tm.states.size() - 1);
    std::uniform_int_distribution<std::size_t> d_letter(0, tm.alphabet.size() - 1);

    Configuration k;
    k.state = tm.states[d_state(rng)];
    k.position = d_pos(rng);
    const int cells = d_cells(rng);
    for (int c = 0; c < cells; ++c) {
      const std::string letter = tm.alphabet[d_letter(rng)];
      if (letter != tm.blank) k.tape[d_pos(rng)] = letter;
    }

    const auto back = decode_term(tm, encode_config(tm, k));
    if (!back || *back != k.normalized())
      return fail("configuration " + config_to_text(k) +
                  " does not survive encode/decode");
  }

  return pass("reports, DOT, system text, and 1000 configurations stable");
}

}  // namespace

int main(int argc, char** argv) {
  std::uint32_t seed = 20240601;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = static_cast<std::uint32_t>(std::stoul(argv[++i]));
    } else {
      std::cerr << "usage: trsd_acceptance [--seed N]\n";
      return 2;
    }
  }

  std::mt19937 rng(seed);
  std::vector<RandomSystem> corpus;
  corpus.reserve(100);
  for (int i = 0; i < 100; ++i) corpus.push_back(random_system(rng));

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"simulation fidelity", [] { return simulation_fidelity(); }},
      {"conservativity and groundness", [] { return conservativity(); }},
      {"termination equivalence", [] { return termination_equivalence(); }},
      {"exact verdicts on derived relations", [] { return exact_verdicts(); }},
      {"oracle equivalence", [&] { return oracle_equivalence(corpus); }},
      {"label-lattice promotion", [&] { return label_lattice(corpus); }},
      {"determinism and round trips", [&] { return determinism(corpus, rng); }},
  };

  int failures = 0;
  int number = 0;
  for (const auto& [title, criterion] : criteria) {
    ++number;
    Outcome outcome = fail("unexpected exception");
    const auto started = std::chrono::steady_clock::now();
    try {
      outcome = criterion();
    } catch (const std::exception& e) {
      outcome = fail(std::string("unexpected exception: ") + e.what());
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << number << " " << title
              << ": " << outcome.detail << std::endl;
    std::cerr << "  (criterion " << number << " took " << elapsed << " ms)"
              << std::endl;
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
