#include <set>

#include "algebra_verifier.hpp"
#include "doctest.h"
#include "published.hpp"
#include "rel/algebra/generate.hpp"
#include "rel/algebra/oracle.hpp"
#include "rel/algebra/scoring.hpp"
#include "rel/core/error.hpp"

using namespace rel;
using namespace rel::algebra;

namespace {

TaskInstance make(TaskCode code, int n, std::uint64_t seed) {
  SeededRng rng(seed);
  if (is_matrix_rule(code)) {
    MatrixOptions o;
    o.rule.code = code;
    o.n = n;
    return gen_matrix_task(o, rng);
  }
  TensorOptions o;
  o.rule.code = code;
  o.n = n;
  return gen_tensor_task(o, rng);
}

}  // namespace

TEST_CASE("worked examples re-solve") {
  CHECK(solve_rule_oracle(fixtures::a1_example()) == 761);
  CHECK(solve_rule_oracle(fixtures::a4_example()) == 512);
  CHECK(solve_rule_oracle(fixtures::a5_example()) == 30);
  CHECK(solve_rule_oracle(fixtures::a6_example()) == 9);
  for (auto inst : {fixtures::a1_example(), fixtures::a4_example(), fixtures::a5_example(),
                    fixtures::a6_example()}) {
    CHECK(oracle::verify_algebra(inst).empty());
  }
}

TEST_CASE("matrix prompt layout") {
  auto inst = fixtures::a1_example();
  CHECK(inst.prompt ==
        "Only return the missing number!\n"
        "row 1: 633, 633, 633; row 2: 354, 354, 354; row 3: 761, 761, ?\n"
        "Answer set:\n"
        "Answer #0: 769\nAnswer #1: 781\nAnswer #2: 789\nAnswer #3: 761\n"
        "Answer #4: 780\nAnswer #5: 752\nAnswer #6: 712\nAnswer #7: 743");
}

TEST_CASE("tensor prompt layout") {
  auto inst = fixtures::a5_example();
  CHECK(inst.prompt.rfind("Complete the Raven's progressive tensor:\nOnly return the missing number!\n"
                          "Slice l=0:\n  row 1: 3, 6, 5\n",
                          0) == 0);
  CHECK(inst.prompt.find("  row 3: 17, 22, ?\n") != std::string::npos);
  CHECK(inst.prompt.find("Answer #5: 30") != std::string::npos);
}

TEST_CASE("score_choice on the first example") {
  auto inst = fixtures::a1_example();
  CHECK(score_choice(inst, "761").outcome == ChoiceOutcome::kCorrect);
  CHECK(score_choice(inst, "Answer #3").outcome == ChoiceOutcome::kCorrect);
  CHECK(score_choice(inst, "Answer #3: 761").outcome == ChoiceOutcome::kCorrect);
  CHECK(score_choice(inst, "the answer is probably 761 or 769").outcome ==
        ChoiceOutcome::kUnparseable);
  CHECK(score_choice(inst, "769").outcome == ChoiceOutcome::kIncorrect);
  CHECK(score_choice(inst, "").outcome == ChoiceOutcome::kUnparseable);
  CHECK(score_choice(inst, "I think 769... final answer: 761").outcome ==
        ChoiceOutcome::kCorrect);
}

TEST_CASE("generated instances satisfy their rule") {
  for (TaskCode code : {TaskCode::A1, TaskCode::A2, TaskCode::A3, TaskCode::A4, TaskCode::A5,
                        TaskCode::A6, TaskCode::A7}) {
    for (int n : {3, 9, 15, 30}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = make(code, n, seed);
        auto problems = oracle::verify_algebra(inst);
        INFO(to_string(code), " n=", n, " seed=", seed);
        REQUIRE(problems.empty());
        const auto& ans = std::get<ChoiceIndex>(inst.answer);
        CHECK(solve_rule_oracle(inst) == ans.value());
        std::set<std::int64_t> distinct(ans.candidates.begin(), ans.candidates.end());
        CHECK(distinct.size() == 8);
        CHECK(inst.rc == expected_rc(code, inst.gen_params));
      }
    }
  }
}

TEST_CASE("A7 cubes are fixed points") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TensorOptions o;
    o.rule.code = TaskCode::A7;
    o.rule.modulus = 7;
    o.rule.maxval = 9;
    SeededRng rng(seed);
    Cube c = generate_cube(o, rng);
    REQUIRE(c.modulus == 7);
    Cube copy = c;
    CHECK(neighborhood_sweep(copy) == 0);
    CHECK(copy.cells == c.cells);
  }
}

TEST_CASE("stencil sizes stay within the neighbourhood bound") {
  CHECK(stencil(TaskCode::A5).size() == 4);
  CHECK(stencil(TaskCode::A6).size() == 5);
  CHECK(stencil(TaskCode::A7).size() == 4);
  for (TaskCode c : {TaskCode::A5, TaskCode::A6, TaskCode::A7}) CHECK(stencil(c).size() <= 26);
}

TEST_CASE("candidates are uniform over positions") {
  std::vector<int> pos(8);
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    SeededRng rng(1000 + i);
    auto cs = build_candidates(500, ValueDomain{400, 600}, rng);
    ++pos[cs.correct_index];
    std::set<std::int64_t> d(cs.values.begin(), cs.values.end());
    REQUIRE(d.size() == 8);
    REQUIRE(cs.values[cs.correct_index] == 500);
  }
  for (int p : pos) CHECK(std::abs(p - n / 8) < 90);
  SeededRng rng(1);
  CHECK_THROWS_AS(build_candidates(5, ValueDomain{0, 6}, rng), ParameterError);
  CHECK_THROWS_AS(build_candidates(50, ValueDomain{0, 20}, rng), ParameterError);
}

TEST_CASE("tampered instance is caught by the oracle") {
  auto inst = fixtures::a1_example();
  inst.gen_params["cells"][0][1] = 634;
  CHECK_THROWS_AS(solve_rule_oracle(inst), IntegrityError);
  CHECK_FALSE(oracle::verify_algebra(inst).empty());
}

TEST_CASE("pipe format") {
  MatrixOptions o;
  o.rule.code = TaskCode::A1;
  o.format = MatrixFormat::kPipe;
  auto inst = gen_matrix_task(o, SeededRng(3));
  CHECK(inst.prompt.find(" | ") != std::string::npos);
  CHECK(oracle::verify_algebra(inst).empty());
}
