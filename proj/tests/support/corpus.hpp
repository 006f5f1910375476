#pragma once

// Accepted epsilon proofs of existential sentences, built from random
// matrices: a kernel-generated proof of A(t) for a true instance t, then the
// critical formula A(t) -> A(e) and the conclusion A(e).

#include "generators.hpp"

#include "epsilon/epsilonizer.hpp"
#include "epsilon/evaluator.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/printer.hpp"

namespace epsilon::testing {

struct Sigma1Case {
  Matrix matrix;
  Term eps;           // eps x. A(x)
  Term witness_term;  // closed, A(witness_term) true
  std::uint64_t witness_value = 0;
  EpsProof proof;
};

/// t closed with A(t) true; sometimes a sum rather than a bare numeral so the
/// proof has to unfold it.
inline Term witness_term_for(Rng& rng, std::uint64_t w) {
  if (w > 0 && coin(rng, 0.4)) {
    std::uint64_t a = uniform(rng, 0, w);
    return make_app("plus", {make_numeral(a), make_numeral(w - a)});
  }
  return make_numeral(w);
}

inline EpsProof sigma1_proof(const Formula& matrix, const Term& t, const Signature& sig,
                             std::span<const Formula> axioms) {
  Term e = make_eps("x", matrix);
  Formula instance = substitute(matrix, "x", t);
  EpsProof p = prove_true_pr_sentence(instance, sig, axioms);
  std::size_t last = p.size() - 1;
  CriticalFormula c = make_critical(t, e);
  p.lines.push_back({c.formula, Justification::critical(t, e)});
  p.lines.push_back({open(close(matrix, "x"), e), Justification::taut({last, last + 1})});
  return p;
}

/// A random case whose witnesses lie below `cap`. The witness used in the
/// proof is some true instance, not necessarily the least one. Matrices whose
/// proof would exceed `max_lines` are redrawn: unfolding times(43, 43) alone
/// yields tens of thousands of lines, and every closed subterm of every line
/// feeds the critical instances downstream.
inline Sigma1Case random_sigma1_case(Rng& rng, const Signature& sig, std::span<const Formula> axioms,
                                     std::uint64_t cap = 50, std::size_t max_lines = 400) {
  for (;;) {
    Matrix m = random_witnessed_matrix(rng, cap);
    std::vector<std::uint64_t> witnesses;
    for (std::uint64_t n = 0; n <= cap; ++n) {
      if (m.holds(n)) witnesses.push_back(n);
    }
    std::uint64_t w = witnesses[uniform(rng, 0, witnesses.size() - 1)];
    Term t = witness_term_for(rng, w);
    Sigma1Case c{m, make_eps("x", m.formula), t, w, {}};
    try {
      eval_qf(substitute(m.formula, "x", t), sig, Assignment{}, 20000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    c.proof = sigma1_proof(m.formula, t, sig, axioms);
    if (c.proof.size() <= max_lines) return c;
  }
}

}  // namespace epsilon::testing
