#include <doctest.h>

#include <stdexcept>

#include "trsd/formats.hpp"
#include "trsd/reach.hpp"

#include "helpers.hpp"

using namespace trsd;

namespace {

std::vector<std::string> names(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const Term& t : terms) out.push_back(format_term(t));
  return out;
}

const Budget kSmall{200, 500, 10000};

}  // namespace

TEST_CASE("budgets must be positive") {
  CHECK_THROWS_AS(validate_budget(Budget{0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate_budget(Budget{1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate_budget(Budget{1, 1, 0}), std::invalid_argument);
  CHECK_NOTHROW(validate_budget(Budget{}));
}

TEST_CASE("the halt1 closure is exact and breadth-first ordered") {
  const Trs trs = compile_trs(tests::corpus_machine("halt1.tm"));
  const ReachSet set = reachable_terms(trs, Term::app("init"), Budget{});
  CHECK(set.complete);
  CHECK(set.depth_reached == 5);
  CHECK(names(set.terms) ==
        std::vector<std::string>{
            "init",
            "st_s(nil,nil)",
            "st_s(nil,cons(blank,nil))",
            "st_s(cons(blank,nil),nil)",
            "st_s(cons(blank,nil),cons(blank,nil))",
            "st_e(cons(blank,cons(blank,nil)),nil)",
            "st_e(cons(blank,cons(blank,nil)),cons(blank,nil))",
            "term",
        });
  CHECK(set.contains(Term::app("term")));
  CHECK_FALSE(set.contains(Term::app("st_e", {Term::app("nil"), Term::app("nil")})));
}

TEST_CASE("the loop2 closure is exact, cyclic, and misses the halt sentinel") {
  const Trs trs = compile_trs(tests::corpus_machine("loop2.tm"));
  const ReachSet set = reachable_terms(trs, Term::app("init"), Budget{});
  CHECK(set.complete);
  CHECK(set.depth_reached == 6);
  CHECK(names(set.terms) ==
        std::vector<std::string>{
            "init",
            "st_s(nil,nil)",
            "st_s(nil,cons(blank,nil))",
            "st_s(cons(blank,nil),nil)",
            "st_s(cons(blank,nil),cons(blank,nil))",
            "st_t(cons(blank,cons(blank,nil)),nil)",
            "st_t(cons(blank,cons(blank,nil)),cons(blank,nil))",
            "st_s(cons(blank,nil),cons(blank,cons(blank,nil)))",
        });
  CHECK_FALSE(set.contains(Term::app("term")));
}

TEST_CASE("reachable graphs keep the edges") {
  const Trs trs = compile_trs(tests::corpus_machine("halt1.tm"));
  const ReachGraph g = reachable_graph(trs, Term::app("init"), Budget{});
  CHECK(g.complete);
  CHECK(g.nodes.size() == 8);
  CHECK(g.edges.size() == 9);
  CHECK(g.edges.front().from == 0);
  CHECK(g.edges.front().to == 1);
  CHECK(g.edges.front().rule_index == 6);
  for (const auto& e : g.edges) {
    const auto redone = rewrite_at(trs, g.nodes[e.from], e.position, e.rule_index);
    REQUIRE(redone);
    CHECK(*redone == g.nodes[e.to]);
  }
}

TEST_CASE("each budget limit reports its own truncation") {
  const Trs trs = compile_trs(tests::corpus_machine("loop1.tm"));
  const Term init = Term::app("init");

  SUBCASE("step limit") {
    const ReachSet set = reachable_terms(trs, init, Budget{5, 5000, 10000});
    CHECK_FALSE(set.complete);
    CHECK(set.note == "step limit reached (max_rewrite_steps=5)");
    CHECK(set.depth_reached == 5);
  }

  SUBCASE("term limit") {
    const ReachSet set = reachable_terms(trs, init, Budget{1000, 4, 10000});
    CHECK_FALSE(set.complete);
    CHECK(set.note == "term limit reached (max_distinct_terms=4)");
    CHECK(set.terms.size() == 4);
  }

  SUBCASE("size limit") {
    const Trs growing = parse_trs("(VAR )\n(RULES\n  a -> f(a)\n)\n");
    const ReachSet set =
        reachable_terms(growing, Term::app("a"), Budget{1000, 5000, 3});
    CHECK_FALSE(set.complete);
    CHECK(set.note == "size limit reached (max_term_size=3)");
    CHECK(names(set.terms) == std::vector<std::string>{"a", "f(a)", "f(f(a))"});
  }

  SUBCASE("non-ground seeds are rejected") {
    const Trs growing = parse_trs("(VAR x)\n(RULES\n  f(x) -> x\n)\n");
    CHECK_THROWS_AS(reachable_terms(growing, Term::variable("x"), Budget{}),
                    std::invalid_argument);
  }
}

TEST_CASE("reaches_plus needs at least one step") {
  const Trs cycle = parse_trs("(VAR )\n(RULES\n  a -> b\n  b -> a\n)\n");
  const Trs line = parse_trs("(VAR )\n(RULES\n  a -> b\n)\n");
  const Term a = Term::app("a");

  SUBCASE("a cycle returns to its seed") {
    const ThreeValued r = reaches_plus(cycle, a, a, Budget{});
    CHECK(r.decision == Decision::yes);
    REQUIRE(r.witness);
    CHECK(r.witness->length() == 2);
    CHECK(r.witness->replays(cycle));
    CHECK(r.note == "witness path of length 2");
  }

  SUBCASE("equality alone is not reachability") {
    const ThreeValued r = reaches_plus(line, a, a, Budget{});
    CHECK(r.decision == Decision::no);
    REQUIRE(r.closure);
    CHECK(r.closure->complete);
    CHECK(r.note == "complete closure of 2 terms does not step to the target");
  }

  SUBCASE("an out-of-budget search stays unknown") {
    const Trs trs = compile_trs(tests::corpus_machine("loop1.tm"));
    const ThreeValued r =
        reaches_plus(trs, Term::app("init"), Term::app("term"), Budget{5, 5000, 10000});
    CHECK(r.decision == Decision::unknown);
    CHECK(r.note ==
          "target not seen before truncation: step limit reached (max_rewrite_steps=5)");
  }
}

TEST_CASE("termination through the compiled system") {
  SUBCASE("halt1: witness found by the search itself") {
    const ThreeValued r = terminates_via_trs(tests::corpus_machine("halt1.tm"), kSmall);
    CHECK(r.decision == Decision::yes);
    CHECK(r.note == "machine halts after 1 step; witness found by search");
    REQUIRE(r.witness);
    CHECK(r.witness->replays(compile_trs(tests::corpus_machine("halt1.tm"))));
    CHECK(format_term(r.witness->terms.front()) == "init");
    CHECK(format_term(r.witness->terms.back()) == "term");
  }

  SUBCASE("count3 halts too") {
    const ThreeValued r = terminates_via_trs(tests::corpus_machine("count3.tm"), kSmall);
    CHECK(r.decision == Decision::yes);
    CHECK(r.note == "machine halts after 3 steps; witness found by search");
  }

  SUBCASE("a starved search falls back to simulation") {
    const ThreeValued r =
        terminates_via_trs(tests::corpus_machine("halt1.tm"), Budget{1000, 3, 10000});
    CHECK(r.decision == Decision::yes);
    CHECK(r.note == "machine halts after 1 step; witness constructed by simulation");
    REQUIRE(r.witness);
    CHECK(r.witness->replays(compile_trs(tests::corpus_machine("halt1.tm"))));
    CHECK(format_term(r.witness->terms.back()) == "term");
  }

  SUBCASE("loop2: the machine cycle is an exact negative") {
    const ThreeValued r = terminates_via_trs(tests::corpus_machine("loop2.tm"), kSmall);
    CHECK(r.decision == Decision::no);
    REQUIRE(r.cycle);
    CHECK(r.cycle->prefix == 0);
    CHECK(r.cycle->period == 2);
    CHECK(r.note == "machine repeats a configuration after 0 steps with period 2");
    REQUIRE(r.closure);
    CHECK(r.closure->complete);
    CHECK(r.closure->terms.size() == 8);
  }

  SUBCASE("loop1 stays unknown at any finite budget we can afford") {
    const ThreeValued r = terminates_via_trs(tests::corpus_machine("loop1.tm"), kSmall);
    CHECK(r.decision == Decision::unknown);
    CHECK(r.note ==
          "machine budget exceeded and target not seen before truncation: "
          "step limit reached (max_rewrite_steps=200)");
  }
}

TEST_CASE("the derived relation follows the two clauses") {
  SUBCASE("halt1: init steps to its whole positive cone") {
    DerivedRelation rel(tests::corpus_machine("halt1.tm"), kSmall);
    const ReachSet s = rel.successors(rel.init_term());
    CHECK(s.complete);
    CHECK(s.terms.size() == 7);
    CHECK(format_term(s.terms.front()) == "st_s(nil,nil)");
    CHECK(s.contains(Term::app("term")));
    CHECK_FALSE(s.contains(rel.init_term()));
  }

  SUBCASE("halt1: reachable terms step to their star cones") {
    DerivedRelation rel(tests::corpus_machine("halt1.tm"), kSmall);
    const Term t = parse_term("st_e(cons(blank,cons(blank,nil)),nil)",
                              rel.trs().signature());
    const ReachSet s = rel.successors(t);
    CHECK(s.complete);
    CHECK(names(s.terms) ==
          std::vector<std::string>{
              "st_e(cons(blank,cons(blank,nil)),nil)",
              "st_e(cons(blank,cons(blank,nil)),cons(blank,nil))",
              "term",
          });

    const ReachSet halt = rel.successors(Term::app("term"));
    CHECK(halt.complete);
    CHECK(names(halt.terms) == std::vector<std::string>{"term"});
  }

  SUBCASE("halt1: unreachable terms have no successors, exactly") {
    DerivedRelation rel(tests::corpus_machine("halt1.tm"), kSmall);
    const Term t = parse_term("st_e(nil,nil)", rel.trs().signature());
    const ReachSet s = rel.successors(t);
    CHECK(s.complete);
    CHECK(s.terms.empty());
  }

  SUBCASE("loop2: the second clause never fires") {
    DerivedRelation rel(tests::corpus_machine("loop2.tm"), kSmall);
    const Term t = parse_term("st_s(nil,nil)", rel.trs().signature());
    const ReachSet s = rel.successors(t);
    CHECK(s.complete);
    CHECK(s.terms.empty());

    const ReachSet from_init = rel.successors(rel.init_term());
    CHECK(from_init.complete);
    CHECK(from_init.terms.size() == 7);
  }

  SUBCASE("loop1: everything the relation cannot resolve says so") {
    DerivedRelation rel(tests::corpus_machine("loop1.tm"), kSmall);
    const ReachSet from_init = rel.successors(rel.init_term());
    CHECK_FALSE(from_init.complete);
    CHECK(from_init.note == "step limit reached (max_rewrite_steps=200)");

    const Term member = parse_term("st_s(nil,nil)", rel.trs().signature());
    const ReachSet s = rel.successors(member);
    CHECK_FALSE(s.complete);
    CHECK(s.terms.empty());
    CHECK(s.note ==
          "termination is unresolved: machine budget exceeded and target not seen "
          "before truncation: step limit reached (max_rewrite_steps=200)");

    const ReachSet ghost = rel.successors(
        parse_term("st_s(nil,cons(blank,cons(blank,nil)))", rel.trs().signature()));
    CHECK_FALSE(ghost.complete);
    CHECK(ghost.note ==
          "reachability from init is unresolved: "
          "step limit reached (max_rewrite_steps=200)");

    CHECK_THROWS_AS(rel.successors(Term::variable("x")), std::invalid_argument);
  }
}
