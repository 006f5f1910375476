#include "epsilon/epsilonizer.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <gtest/gtest.h>

using namespace epsilon;

namespace {

const Signature& sig() { return default_prelude(); }
Formula F(const char* s) { return parse_formula(s, sig()); }
const std::vector<Formula>& axioms() {
  static const std::vector<Formula> ax = default_axioms(sig());
  return ax;
}
EpsProof P(const char* text) { return parse_proof(text, sig()); }

TEST(Taut, Examples) {
  std::vector<Formula> mp = {F("0 = 0"), F("0 = 0 -> S(0) = S(0)")};
  EXPECT_TRUE(is_taut_consequence(mp, F("S(0) = S(0)")));
  EXPECT_TRUE(is_taut_consequence({}, F("0 = 0 or not 0 = 0")));
  EXPECT_FALSE(is_taut_consequence({}, F("0 = 0")));
  EXPECT_TRUE(is_taut_consequence({}, F("(all x < 3. x = x) -> (all x < 3. x = x)")));
}

TEST(Taut, AtomCap) {
  std::string text = "0 = 0";
  for (int i = 1; i <= 24; ++i) text += " or " + std::to_string(i) + " = 0";
  Formula big = F(text.c_str());
  EXPECT_THROW(is_taut_consequence({}, big), AtomCapExceeded);
  EXPECT_THROW(is_taut_consequence({}, F("0 = 0 or 1 = 0 or 2 = 0"), 2), AtomCapExceeded);
  EXPECT_FALSE(is_taut_consequence({}, F("0 = 0 or 1 = 0 or 2 = 0"), 3));
}

TEST(Check, IdentityLine) { EXPECT_TRUE(check_eps_proof(P("0 | 0 = 0 | identity\n"), sig(), axioms())); }

TEST(Check, RecursionAndTaut) {
  EpsProof p = P(
      "0 | plus(0, 0) = 0 | recursion\n"
      "1 | plus(0, 0) = 0 -> (0 = 0 -> plus(0, 0) = 0) | taut\n"
      "2 | 0 = 0 -> plus(0, 0) = 0 | taut 0, 1\n");
  EXPECT_TRUE(check_eps_proof(p, sig(), axioms())) << check_eps_proof(p, sig(), axioms()).to_text();
}

TEST(Check, ForwardReference) {
  EpsProof p = P(
      "0 | 0 = 0 | identity\n"
      "1 | 0 = 0 | identity\n"
      "2 | 0 = 0 | identity\n"
      "3 | 0 = 0 | taut 5\n");
  Verdict v = check_eps_proof(p, sig(), axioms());
  EXPECT_FALSE(v);
  EXPECT_EQ(v.line, 3u);
  EXPECT_EQ(v.reason, RejectReason::forward_reference);
  EXPECT_EQ(v.to_text().rfind("rejected 3 forward-reference", 0), 0u);
}

TEST(Check, RejectionReasons) {
  auto reason = [&](const char* text) { return check_eps_proof(P(text), sig(), axioms()).reason; };
  EXPECT_EQ(reason("0 | plus(0, 0) = S(0) | recursion\n"), RejectReason::bad_recursion);
  EXPECT_EQ(reason("0 | 0 = S(0) | identity\n"), RejectReason::bad_identity);
  EXPECT_EQ(reason("0 | 0 = 0 | axiom 9\n"), RejectReason::bad_axiom_index);
  EXPECT_EQ(reason("0 | 0 = 0 | axiom 0\n"), RejectReason::axiom_mismatch);
  EXPECT_EQ(reason("0 | 0 = 0 | taut\n"), RejectReason::not_tautological);
  EXPECT_EQ(reason("0 | a = a | identity\n"), RejectReason::not_closed);
  EXPECT_EQ(reason("0 | 0 = 0 -> (eps x. x = 0) = 0 | critical S(0) ; eps x. x = 0\n"), RejectReason::bad_critical);
  EXPECT_EQ(reason("0 | 0 = 0 -> (eps x. x = 0) = 0 | critical 0 ; eps x. x = 0\n"), RejectReason::none);
  EpsProof quantified;
  quantified.lines.push_back({F("ex x. x = 0"), Justification::identity()});
  EXPECT_EQ(check_eps_proof(quantified, sig(), axioms()).reason, RejectReason::not_qf);
}

TEST(Check, AxiomLines) {
  EXPECT_TRUE(check_eps_proof(P("0 | not 0 = S(0) | axiom 0\n"), sig(), axioms()));
  std::string line = "0 | " + print(axioms()[1]) + " | axiom 1\n";
  EXPECT_TRUE(check_eps_proof(P(line.c_str()), sig(), axioms()));
}

TEST(RecursionInstances, Shapes) {
  EXPECT_TRUE(is_recursion_instance(F("plus(3, S(1)) = S(plus(3, 1))"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("S(plus(3, 1)) = plus(3, 2)"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("lt(2, 5) = sg(monus(5, 2))"), sig()));
  EXPECT_FALSE(is_recursion_instance(F("plus(3, 2) = 5"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("all x < 0. x = 7"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("not ex x < 0. x = 7"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("(all x < 3. x = x) -> (all x < 2. x = x) and 2 = 2"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("(all x < 2. x = x) and 2 = 2 -> (all x < 3. x = x)"), sig()));
  EXPECT_TRUE(is_recursion_instance(F("(ex x < 3. x = 1) -> (ex x < 2. x = 1) or 2 = 1"), sig()));
  EXPECT_FALSE(is_recursion_instance(F("(all x < 3. x = x) -> (all x < 1. x = x) and 2 = 2"), sig()));
}

TEST(IdentityInstances, Shapes) {
  EXPECT_TRUE(is_identity_instance(F("plus(1, 1) = plus(1, 1)")));
  EXPECT_TRUE(is_identity_instance(F("plus(1, 1) = 2 -> S(plus(1, 1)) = S(2)")));
  EXPECT_TRUE(is_identity_instance(F("plus(1, 1) = 2 -> (times(plus(1, 1), 3) = 6 -> times(2, 3) = 6)")));
  EXPECT_TRUE(is_identity_instance(F("plus(1, 1) = 2 -> S(plus(1, 1)) = S(S(S(0)))")));
  EXPECT_FALSE(is_identity_instance(F("plus(1, 1) = 2 -> plus(1, 1) = 3")));
  EXPECT_FALSE(is_identity_instance(F("0 = 1")));
}

TEST(Prove, Examples) {
  EpsProof one = prove_true_pr_sentence(F("S(0) = S(0)"), sig(), axioms());
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.lines[0].justification.kind, Justification::Kind::identity);

  EpsProof two = prove_true_pr_sentence(F("plus(S(0), S(0)) = S(S(0))"), sig(), axioms());
  EXPECT_TRUE(check_eps_proof(two, sig(), axioms()));
  EXPECT_EQ(two.conclusion(), F("plus(S(0), S(0)) = S(S(0))"));
  std::size_t recursion_lines = 0;
  for (const auto& l : two.lines) recursion_lines += l.justification.kind == Justification::Kind::recursion;
  EXPECT_EQ(recursion_lines, 2u);

  EXPECT_THROW(prove_true_pr_sentence(F("0 = S(0)"), sig(), axioms()), NotTrue);
}

TEST(Prove, NegationsConnectivesAndBoundedQuantifiers) {
  for (const char* s : {"not times(2, 3) = 5", "not 0 = S(0)", "plus(1, 1) = 2 and not 1 = 2", "0 = 1 or 1 = 1",
                        "0 = 1 -> 5 = 7", "all x < 3. lt(x, 3) = 1", "ex x < plus(2, 2). times(x, x) = 9",
                        "not (ex x < 3. times(x, x) = 9)", "all x < 4. ex y < 5. plus(x, 1) = y"}) {
    EpsProof p = prove_true_pr_sentence(F(s), sig(), axioms());
    Verdict v = check_eps_proof(p, sig(), axioms());
    EXPECT_TRUE(v) << s << ": " << v.to_text();
    EXPECT_EQ(p.conclusion(), F(s));
  }
}

TEST(Prove, Preconditions) {
  EXPECT_THROW(prove_true_pr_sentence(F("(eps x. x = 0) = 0"), sig(), axioms()), PreconditionError);
  EXPECT_THROW(prove_true_pr_sentence(F("ex x. x = 0"), sig(), axioms()), PreconditionError);
  EXPECT_THROW(prove_true_pr_sentence(F("times(30, 30) = 900"), sig(), axioms(), {5, kDefaultEvalBudget}), BudgetExceeded);
}

}  // namespace
