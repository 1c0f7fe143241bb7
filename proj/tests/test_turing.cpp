#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "trsd/turing.hpp"

#include "helpers.hpp"

using namespace trsd;

TEST_CASE("corpus machines validate cleanly") {
  for (const char* name : {"halt1.tm", "loop1.tm", "loop2.tm", "count3.tm"})
    CHECK(validate_machine(tests::corpus_machine(name)).empty());
}

TEST_CASE("validation reports each defect") {
  TuringMachine tm = tests::corpus_machine("halt1.tm");

  SUBCASE("duplicate delta entry") {
    tm.delta.push_back(tm.delta.front());
    const auto defects = validate_machine(tm);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0] == "duplicate delta entry at (s, blank)");
  }

  SUBCASE("delta at the final state") {
    tm.delta.push_back({"e", "blank", "e", Direction::right, "blank"});
    const auto defects = validate_machine(tm);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0] == "delta defined at final state (e, blank)");
  }

  SUBCASE("delta must be total off the final state") {
    tm.delta.clear();
    const auto defects = validate_machine(tm);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0] == "delta undefined at (s, blank)");
  }

  SUBCASE("unknown names") {
    tm.start = "missing";
    tm.delta.push_back({"s", "one", "s", Direction::left, "blank"});
    const auto defects = validate_machine(tm);
    CHECK(defects.size() == 2);
  }

  SUBCASE("blank must be a tape symbol") {
    tm.blank = "zero";
    CHECK_FALSE(validate_machine(tm).empty());
  }
}

TEST_CASE("step writes, moves, and erases blanks") {
  const TuringMachine tm = tests::corpus_machine("count3.tm");
  const Configuration start = initial_config(tm);
  CHECK(start.state == "q0");
  CHECK(start.position == 0);
  CHECK(start.tape.empty());

  const auto first = step(tm, start);
  REQUIRE(first);
  CHECK(first->state == "q1");
  CHECK(first->position == 1);
  CHECK(first->cell(0, tm.blank) == "one");
  CHECK(first->cell(7, tm.blank) == "blank");

  Configuration final_config = start;
  for (int i = 0; i < 3; ++i) final_config = *step(tm, final_config);
  CHECK(final_config.state == "e");
  CHECK_FALSE(step(tm, final_config));  // final states do not step
}

TEST_CASE("writing the blank erases the cell") {
  TuringMachine tm = tests::corpus_machine("count3.tm");
  tm.delta = {{"q0", "one", "q1", Direction::left, "blank"}};
  Configuration k = initial_config(tm);
  k.tape[0] = "one";
  const auto next = step(tm, k);
  REQUIRE(next);
  CHECK(next->tape.empty());
  CHECK(next->position == -1);
  CHECK_THROWS_AS(step(tm, *next), std::invalid_argument);  // no entry for (q1, blank)
}

TEST_CASE("normalization translates the head to zero") {
  Configuration k;
  k.state = "q";
  k.position = 5;
  k.tape[3] = "one";
  k.tape[7] = "one";
  const Configuration n = k.normalized();
  CHECK(n.position == 0);
  CHECK(n.tape.at(-2) == "one");
  CHECK(n.tape.at(2) == "one");
  CHECK(n == k.normalized());
  CHECK_FALSE(n == k);
}

TEST_CASE("run distinguishes halting, cycling, and budget exhaustion") {
  SUBCASE("halt1 halts in one step") {
    const RunOutcome r = run(tests::corpus_machine("halt1.tm"), 100);
    CHECK(r.kind == RunOutcome::Kind::halted);
    CHECK(r.steps == 1);
    REQUIRE(r.final_config);
    CHECK(r.final_config->state == "e");
    CHECK(r.final_config->position == 1);
  }

  SUBCASE("count3 halts after writing three marks") {
    const RunOutcome r = run(tests::corpus_machine("count3.tm"), 100);
    CHECK(r.kind == RunOutcome::Kind::halted);
    CHECK(r.steps == 3);
    REQUIRE(r.final_config);
    CHECK(r.final_config->tape.size() == 3);
  }

  SUBCASE("loop2 repeats its start configuration") {
    const RunOutcome r = run(tests::corpus_machine("loop2.tm"), 100);
    CHECK(r.kind == RunOutcome::Kind::cycled);
    CHECK(r.cycle_prefix == 0);
    CHECK(r.cycle_period == 2);
  }

  SUBCASE("loop1 never repeats, so the budget runs out") {
    const RunOutcome r = run(tests::corpus_machine("loop1.tm"), 50);
    CHECK(r.kind == RunOutcome::Kind::exceeded);
    CHECK(r.steps == 50);
  }

  SUBCASE("invalid machines are rejected") {
    TuringMachine tm = tests::corpus_machine("halt1.tm");
    tm.delta.clear();
    CHECK_THROWS_AS(run(tm, 10), std::invalid_argument);
  }
}

TEST_CASE("positions are not bounded by machine words") {
  const TuringMachine tm = tests::corpus_machine("loop1.tm");
  Configuration k = initial_config(tm);
  k.position = CellIndex("123456789012345678901234567890");
  const auto next = step(tm, k);
  REQUIRE(next);
  CHECK(next->position == CellIndex("123456789012345678901234567891"));
}
