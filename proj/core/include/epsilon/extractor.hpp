#pragma once

// Witness extraction: from an accepted proof whose last line is A(e) for a
// designated e = eps x. A(x), compute a number n with A(n) true and a proof
// of that numerical instance.

#include "epsilon/kernel.hpp"
#include "epsilon/solver.hpp"

#include <optional>

namespace epsilon {

class ProofRejected : public Error {
 public:
  explicit ProofRejected(Verdict v) : Error("proof rejected: " + v.to_text()), verdict(std::move(v)) {}
  Verdict verdict;
};

class SolverFailure : public Error {
 public:
  explicit SolverFailure(SolveOutcome o, const std::string& what) : Error(what), outcome(std::move(o)) {}
  SolveOutcome outcome;
};

struct ExtractOptions {
  SolveOptions solve;
  ProveOptions prove;
};

struct Extraction {
  Natural witness;
  /// the eps-free instance that instance_proof proves
  Formula instance;
  EpsProof instance_proof;
  /// A(n) still mentioned eps terms; they were replaced by their assigned values
  bool instance_not_eps_free = false;
  SolveProblem problem;
  SolveOutcome outcome;
};

/// The solver problem for a proof: its axiom lines plus every critical
/// formula over its lines.
SolveProblem problem_for(const EpsProof& p);

/// Throws ProofRejected, PreconditionError (last line is not A(e)),
/// SolverFailure (non-termination or a false axiom).
Extraction extract_witness(const EpsProof& p, const Term& e, const Signature& sig, std::span<const Formula> axioms,
                           const ExtractOptions& options = {});

}  // namespace epsilon
