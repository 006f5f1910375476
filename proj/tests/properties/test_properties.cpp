// Randomized invariants across modules. Seeds are fixed, so failures
// reproduce exactly.

#include "../support/corpus.hpp"
#include "../support/generators.hpp"

#include "epsilon/epsilonizer.hpp"
#include "epsilon/extractor.hpp"
#include "epsilon/goedel.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"
#include "epsilon/solver.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>

using namespace epsilon;
using namespace epsilon::testing;

namespace {

const Signature& sig() { return default_prelude(); }
const std::vector<Formula>& axioms() {
  static const std::vector<Formula> ax = default_axioms(sig());
  return ax;
}

// ---- syntax ---------------------------------------------------------------

TEST(SyntaxProperty, ParsePrintRoundTrip) {
  Rng rng(201);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 4);
    std::string text = print(f);
    Formula g = parse_formula(text, sig());
    ASSERT_EQ(f, g) << text;
    ASSERT_EQ(print(g), text);
  }
  for (int i = 0; i < 1000; ++i) {
    Term t = random_term(rng, 4);
    ASSERT_EQ(parse_term(print(t), sig()), t) << print(t);
  }
}

TEST(SyntaxProperty, QuantifierFreenessIsStableUnderSubstitution) {
  Rng rng(202);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 3);
    Term v = random_term(rng, 2);
    if (v.loose() != 0) continue;
    Formula g = substitute(f, "a", v);
    if (f.quantifier_free() && !v.has_quantifier()) {
      ASSERT_TRUE(g.quantifier_free()) << print(g);
    }
  }
}

// ---- epsilonizer ----------------------------------------------------------

TEST(EpsilonizerProperty, TranslationIsQuantifierFreeAndIdempotent) {
  Rng rng(203);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 4);
    Formula t = epsilon_translate(f);
    ASSERT_TRUE(t.quantifier_free()) << print(f);
    ASSERT_EQ(epsilon_translate(t), t);
    ASSERT_EQ(free_vars(t), free_vars(f));
  }
}

TEST(EpsilonizerProperty, RankDecreasesOnProperEpsSubterms) {
  Rng rng(204);
  for (int i = 0; i < 500; ++i) {
    Formula f = epsilon_translate(random_formula(rng, 4));
    for (const auto& e : closed_eps_subterms(f)) {
      ASSERT_GE(rank(e), 1u);
      for (const auto& inner : closed_eps_subterms(e.body())) ASSERT_LT(rank(inner), rank(e)) << print(e);
    }
  }
}

TEST(EpsilonizerProperty, CriticalInstancesHaveCriticalShape) {
  Rng rng(205);
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> lines;
    for (int k = 0; k < 3; ++k) lines.push_back(ground(epsilon_translate(random_formula(rng, 3)), rng));
    for (const auto& c : critical_instances(lines)) {
      ASSERT_TRUE(c.formula.closed());
      ASSERT_TRUE(c.formula.quantifier_free());
      ASSERT_EQ(c.formula.kind(), Formula::Kind::implication);
      ASSERT_EQ(c.formula.right(), open(c.eps.body(), c.eps));
      ASSERT_EQ(c.formula.left(), open(c.eps.body(), c.witness));
    }
  }
}

// ---- solver ---------------------------------------------------------------

struct Rank1Problem {
  SolveProblem problem;
  std::uint64_t bound = 0;
};

// Rank-1 eps terms over random witnessed matrices with critical formulas at
// random closed witness terms.
Rank1Problem random_rank1_problem(Rng& rng) {
  Rank1Problem out;
  std::size_t k = uniform(rng, 1, 4);
  std::uint64_t max_witness = 0;
  for (std::size_t i = 0; i < k; ++i) {
    Matrix m = random_witnessed_matrix(rng, 30);
    Term e = make_eps("x", m.formula);
    for (std::uint64_t j = uniform(rng, 1, 3); j > 0; --j) {
      std::uint64_t w = uniform(rng, 0, 30);
      Term t = witness_term_for(rng, w);
      max_witness = std::max(max_witness, w);
      out.problem.criticals.push_back(make_critical(t, e));
    }
  }
  out.bound = k * (1 + max_witness);
  return out;
}

TEST(SolverProperty, SolutionsVerifyAndRespectPriority) {
  Rng rng(206);
  for (int i = 0; i < 200; ++i) {
    Rank1Problem rp = random_rank1_problem(rng);
    SolveOutcome o = solve(rp.problem, sig(), {rp.bound, kDefaultEvalBudget});
    ASSERT_TRUE(o.solved()) << print(rp.problem);
    ASSERT_LE(o.trace.steps.size(), rp.bound);
    ASSERT_TRUE(verify(o.assignment, rp.problem, sig()));
    Assignment replay;
    for (const auto& s : o.trace.steps) {
      ASSERT_FALSE(eval_qf(s.violated.formula, sig(), replay));
      ASSERT_EQ(replay.get(s.eps), s.old_value);
      for (const auto& c : rp.problem.criticals) {
        if (!eval_qf(c.formula, sig(), replay)) {
          ASSERT_LE(rank(s.eps), rank(c.eps));
        }
      }
      replay.set(s.eps, s.new_value);
      ASSERT_TRUE(eval_qf(open(s.eps.body(), make_numeral(s.new_value)), sig(), replay));
      for (Natural m = 0; m < s.new_value; ++m) {
        ASSERT_FALSE(eval_qf(open(s.eps.body(), make_numeral(m)), sig(), replay));
      }
      for (const auto& r : s.resets) {
        ASSERT_GT(rank(r), rank(s.eps));
        replay.erase(r);
      }
    }
  }
}

// ---- kernel ---------------------------------------------------------------

TEST(KernelProperty, GeneratedProofsOfTrueSentencesAreAccepted) {
  Rng rng(207);
  int proved = 0;
  for (int i = 0; i < 400; ++i) {
    PropPtr p = random_prop(rng, 3, 0, 10);
    Formula f = to_formula(*p, {});
    if (!native(*p, {})) {
      ASSERT_THROW(prove_true_pr_sentence(f, sig(), axioms()), NotTrue);
      continue;
    }
    EpsProof proof = prove_true_pr_sentence(f, sig(), axioms());
    ASSERT_EQ(proof.conclusion(), f);
    Verdict v = check_eps_proof(proof, sig(), axioms());
    ASSERT_TRUE(v) << print(f) << "\n" << v.to_text();
    ++proved;
  }
  EXPECT_GT(proved, 100);
}

TEST(KernelProperty, GeneratedProofsCoverBoundedQuantifiers) {
  Rng rng(208);
  for (int i = 0; i < 100; ++i) {
    PropPtr p = random_prop(rng, 2, 1, 10);
    Formula body = to_formula(*p, {make_var("x")});
    std::uint64_t b = uniform(rng, 0, 8);
    for (Formula f : {make_bounded_forall("x", make_numeral(b), body), make_bounded_exists("x", make_numeral(b), body)}) {
      if (!eval_qf(f, sig())) f = make_not(f);
      EpsProof proof = prove_true_pr_sentence(f, sig(), axioms());
      Verdict v = check_eps_proof(proof, sig(), axioms());
      ASSERT_TRUE(v) << print(f) << "\n" << v.to_text();
    }
  }
}

TEST(KernelProperty, AcceptedLinesAreTrueUnderSolvedAssignments) {
  Rng rng(209);
  for (int i = 0; i < 60; ++i) {
    Sigma1Case c = random_sigma1_case(rng, sig(), axioms());
    ASSERT_TRUE(check_eps_proof(c.proof, sig(), axioms()));
    SolveOutcome o = solve(problem_for(c.proof), sig());
    ASSERT_TRUE(o.solved());
    for (const auto& line : c.proof.lines) ASSERT_TRUE(eval_qf(line.formula, sig(), o.assignment)) << print(line.formula);
  }
}

// ---- extractor ------------------------------------------------------------

TEST(ExtractorProperty, WitnessIsLeastAndInstanceProofAccepted) {
  Rng rng(210);
  for (int i = 0; i < 60; ++i) {
    Sigma1Case c = random_sigma1_case(rng, sig(), axioms());
    Extraction x = extract_witness(c.proof, c.eps, sig(), axioms());
    ASSERT_EQ(x.witness, native_least(c.matrix, 50)) << print(c.matrix.formula);
    ASSERT_TRUE(c.matrix.holds(static_cast<std::uint64_t>(x.witness)));
    ASSERT_FALSE(x.instance_not_eps_free);
    ASSERT_TRUE(check_eps_proof(x.instance_proof, sig(), axioms()));
    ASSERT_EQ(x.instance_proof.conclusion(), substitute(c.matrix.formula, "x", make_numeral(x.witness)));
  }
}

// ---- goedelizer -----------------------------------------------------------

void for_each_numeral(const Formula& f, const std::function<void(const Natural&)>& fn) {
  visit_terms(f, [&](const Term& t) {
    if (t.is_numeral()) fn(t.value());
    return true;
  });
}

TEST(GoedelProperty, RoundTripInjectivityAndMonotonicity) {
  Rng rng(211);
  std::map<Code, std::string> seen;
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, 4);
    Code c = encode(f);
    ASSERT_EQ(decode_formula(c), f);
    auto [it, fresh] = seen.emplace(c, print(f));
    if (!fresh) {
      ASSERT_EQ(decode_formula(c), parse_formula(it->second, sig()));
    }
    for_each_numeral(f, [&](const Natural& n) { ASSERT_LT(n, c); });
    if (f.is_connective() || f.is_binder()) {
      ASSERT_LT(encode(f.sub(0)), c);
    }
    if (f.kind() == Formula::Kind::eq) {
      ASSERT_LT(encode(f.lhs()), c);
      ASSERT_LT(encode(f.rhs()), c);
    }
  }
  for (int i = 0; i < 300; ++i) {
    EpsProof p = random_proof(rng);
    Code c = encode(p);
    ASSERT_EQ(decode_proof(c), p);
    for (const auto& line : p.lines) {
      ASSERT_LT(encode(line.formula), c);
      for_each_numeral(line.formula, [&](const Natural& n) { ASSERT_LT(n, c); });
    }
  }
}

TEST(GoedelProperty, ProofPredicateMatchesKernel) {
  Rng rng(212);
  for (int i = 0; i < 40; ++i) {
    Sigma1Case c = random_sigma1_case(rng, sig(), axioms());
    Code p = encode(c.proof);
    ASSERT_TRUE(proof_pred(p, encode(c.proof.conclusion()), sig(), axioms()));
    ASSERT_FALSE(proof_pred(p, encode(c.proof.lines.front().formula), sig(), axioms()) &&
                 c.proof.lines.front().formula != c.proof.conclusion());
    EpsProof broken = c.proof;
    broken.lines.back().justification = Justification::taut({});
    ASSERT_FALSE(proof_pred(encode(broken), encode(broken.conclusion()), sig(), axioms()));
  }
  for (int i = 0; i < 200; ++i) {
    Code garbage = uniform(rng, 0, 1'000'000'000);
    ASSERT_FALSE(proof_pred(garbage, garbage, sig(), axioms()));
  }
}

}  // namespace
