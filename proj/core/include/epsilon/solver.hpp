#pragma once

// The substitution procedure: find an assignment of numbers to eps terms
// under which a finite set of critical formulas and axioms is true.
//
// Starting from all zeros, each step takes the first false critical formula
// in (rank of its eps term, printed formula) order, sets its eps term e to the
// least n for which the matrix holds, and resets every assigned eps term of
// strictly greater rank to 0.

#include "epsilon/epsilonizer.hpp"
#include "epsilon/evaluator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epsilon {

inline constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;

struct SolveProblem {
  std::vector<Formula> axioms;
  std::vector<CriticalFormula> criticals;
};

struct SolveStep {
  CriticalFormula violated;
  Term eps;
  Natural old_value;
  Natural new_value;
  /// eps terms reset to 0, in printed order
  std::vector<Term> resets;
  /// no n up to the witness value made the matrix true; the witness value was used
  bool fallback = false;
};

struct SolveTrace {
  std::vector<SolveStep> steps;
  /// one step per line: step, eps term, "old -> new", resets
  std::string to_text() const;
};

struct SolveOptions {
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::uint64_t eval_budget = kDefaultEvalBudget;
};

struct SolveOutcome {
  enum class Status { solved, non_termination, false_axiom };
  Status status = Status::solved;
  Assignment assignment;
  SolveTrace trace;
  /// the offending axiom when status is false_axiom
  std::optional<Formula> false_axiom;

  bool solved() const { return status == Status::solved; }
};

SolveOutcome solve(const SolveProblem& problem, const Signature& sig, const SolveOptions& options = {});

/// Every formula of the problem is true under `a`.
bool verify(const Assignment& a, const SolveProblem& problem, const Signature& sig,
            std::uint64_t budget = kDefaultEvalBudget);

/// Problem file: "axiom: <formula>" and "critical: <formula>" lines. The
/// (t, e) of a critical line is recovered from its shape.
SolveProblem parse_problem(std::string_view text, const Signature& sig);
std::string print(const SolveProblem& problem);

}  // namespace epsilon
