#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"
#include "epsilon/solver.hpp"

#include <gtest/gtest.h>

using namespace epsilon;

namespace {

const Signature& sig() { return default_prelude(); }
Term T(const char* s) { return parse_term(s, sig()); }

SolveProblem P(const char* text) { return parse_problem(text, sig()); }

TEST(Solve, SingleStepToLeastWitness) {
  SolveProblem p = P("critical: S(0) = S(0) -> (eps x. x = S(0)) = S(0)\n");
  SolveOutcome o = solve(p, sig());
  ASSERT_TRUE(o.solved());
  EXPECT_EQ(o.assignment.get(T("eps x. x = S(0)")), 1);
  ASSERT_EQ(o.trace.steps.size(), 1u);
  EXPECT_EQ(o.trace.steps[0].old_value, 0);
  EXPECT_EQ(o.trace.steps[0].new_value, 1);
  EXPECT_EQ(o.trace.to_text(), "1\teps x. x = S(0)\t0 -> 1\t-\n");
  EXPECT_TRUE(verify(o.assignment, p, sig()));
  EXPECT_FALSE(verify(Assignment{}, p, sig()));
}

TEST(Solve, ZeroStartCanSuffice) {
  SolveProblem p = P("critical: lt(0, S(0)) = 1 -> lt(eps x. lt(x, S(0)) = 1, S(0)) = 1\n");
  SolveOutcome o = solve(p, sig());
  ASSERT_TRUE(o.solved());
  EXPECT_TRUE(o.trace.steps.empty());
  EXPECT_TRUE(o.assignment.empty());
}

TEST(Solve, LeastNotGivenWitness) {
  SolveProblem p = P("critical: lt(2, times(7, 7)) = 1 -> lt(2, times(eps x. lt(2, times(x, x)) = 1, eps x. lt(2, times(x, x)) = 1)) = 1\n");
  SolveOutcome o = solve(p, sig());
  ASSERT_TRUE(o.solved());
  EXPECT_EQ(o.assignment.get(T("eps x. lt(2, times(x, x)) = 1")), 2);
}

TEST(Solve, FalseAxiom) {
  SolveOutcome o = solve(P("axiom: 0 = S(0)\n"), sig());
  EXPECT_EQ(o.status, SolveOutcome::Status::false_axiom);
  ASSERT_TRUE(o.false_axiom.has_value());
  EXPECT_EQ(print(*o.false_axiom), "0 = S(0)");
}

TEST(Solve, NonTerminationCarriesTrace) {
  SolveProblem p = P(
      "critical: S(0) = S(0) -> (eps x. x = S(0)) = S(0)\n"
      "critical: S(S(0)) = S(S(0)) -> (eps x. x = S(S(0))) = S(S(0))\n");
  SolveOutcome o = solve(p, sig(), {1, kDefaultEvalBudget});
  EXPECT_EQ(o.status, SolveOutcome::Status::non_termination);
  EXPECT_EQ(o.trace.steps.size(), 1u);
  EXPECT_TRUE(solve(p, sig(), {2, kDefaultEvalBudget}).solved());
}

TEST(Solve, HigherRankTermsAreReset) {
  // d depends on c; fixing c must reset d.
  const char* text =
      "critical: S(0) = S(0) -> (eps x. x = S(0)) = S(0)\n"
      "critical: S(S(0)) = plus(eps x. x = S(0), S(0)) -> (eps y. y = plus(eps x. x = S(0), S(0))) = plus(eps x. x = S(0), S(0))\n";
  SolveProblem p = P(text);
  ASSERT_EQ(p.criticals.size(), 2u);
  SolveOutcome o = solve(p, sig());
  ASSERT_TRUE(o.solved());
  EXPECT_TRUE(verify(o.assignment, p, sig()));
  EXPECT_EQ(o.assignment.get(T("eps y. y = plus(eps x. x = S(0), S(0))")), 2);
  EXPECT_EQ(o.trace.steps.front().eps, T("eps x. x = S(0)"));
}

TEST(Solve, ResetsAreRecorded) {
  // d is fixed first while c's critical formula still holds; fixing d makes
  // it false, and updating c then resets d.
  const char* text =
      "critical: (eps y. y = plus(eps x. x = S(0), S(0))) = S(0) -> (eps x. x = S(0)) = S(0)\n"
      "critical: S(0) = plus(eps x. x = S(0), S(0)) -> (eps y. y = plus(eps x. x = S(0), S(0))) = plus(eps x. x = S(0), S(0))\n";
  SolveProblem p = P(text);
  SolveOutcome o = solve(p, sig());
  ASSERT_TRUE(o.solved());
  ASSERT_EQ(o.trace.steps.size(), 2u);
  Term c = T("eps x. x = S(0)");
  Term d = T("eps y. y = plus(eps x. x = S(0), S(0))");
  EXPECT_EQ(o.trace.steps[0].eps, d);
  EXPECT_EQ(o.trace.steps[1].eps, c);
  EXPECT_EQ(o.trace.steps[1].resets, std::vector<Term>{d});
  EXPECT_EQ(o.assignment.get(c), 1);
  EXPECT_EQ(o.assignment.get(d), 0);
  EXPECT_TRUE(verify(o.assignment, p, sig()));
}

TEST(Verify, EmptyProblem) { EXPECT_TRUE(verify(Assignment{}, SolveProblem{}, sig())); }

TEST(ProblemFormat, RoundTrip) {
  const char* text =
      "axiom: not 0 = S(0)\n"
      "critical: S(0) = S(0) -> (eps x. x = S(0)) = S(0)\n";
  SolveProblem p = P(text);
  EXPECT_EQ(p.axioms.size(), 1u);
  EXPECT_EQ(p.criticals.size(), 1u);
  EXPECT_EQ(print(p), text);
  EXPECT_THROW(P("critical: 0 = 0\n"), ParseError);
  EXPECT_THROW(P("lemma: 0 = 0\n"), ParseError);
}

}  // namespace
