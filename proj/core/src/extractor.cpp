#include "epsilon/extractor.hpp"

#include "epsilon/ops.hpp"
#include "epsilon/printer.hpp"

#include <unordered_set>

namespace epsilon {

SolveProblem problem_for(const EpsProof& p) {
  SolveProblem problem;
  std::vector<Formula> lines;
  std::unordered_set<Formula, FormulaHash> seen_axioms;
  for (const auto& line : p.lines) {
    lines.push_back(line.formula);
    if (line.justification.kind == Justification::Kind::axiom && seen_axioms.insert(line.formula).second) {
      problem.axioms.push_back(line.formula);
    }
  }
  // Critical lines of the proof are among these: both t and e occur in the line.
  problem.criticals = critical_instances(lines);
  return problem;
}

Extraction extract_witness(const EpsProof& p, const Term& e, const Signature& sig, std::span<const Formula> axioms,
                           const ExtractOptions& options) {
  Verdict v = check_eps_proof(p, sig, axioms, options.solve.eval_budget);
  if (!v) throw ProofRejected(std::move(v));
  if (!e.is_eps() || !e.closed()) throw PreconditionError("designated term is not a closed eps term: " + print(e));
  if (p.empty() || p.conclusion() != open(e.body(), e)) {
    throw PreconditionError("last line is not A(e) for the designated e = " + print(e));
  }

  SolveProblem problem = problem_for(p);
  SolveOutcome outcome = solve(problem, sig, options.solve);
  switch (outcome.status) {
    case SolveOutcome::Status::non_termination:
      throw SolverFailure(std::move(outcome), "substitution procedure did not terminate within the step limit");
    case SolveOutcome::Status::false_axiom:
      throw SolverFailure(outcome, "axiom is false under every assignment reached: " + print(*outcome.false_axiom));
    case SolveOutcome::Status::solved:
      break;
  }

  Natural n = outcome.assignment.get(e);
  Formula direct = open(e.body(), make_numeral(n));
  // Replacing every maximal eps term of A(e) by its value yields A(n) when A
  // is eps-free, and the fully numeral reading of the last line otherwise.
  const Assignment& a = outcome.assignment;
  Formula instance = replace_maximal_eps(p.conclusion(), [&](const Term& t) { return make_numeral(a.get(t)); });
  if (!eval_qf(instance, sig, {}, options.solve.eval_budget)) {
    throw Error("internal: extracted instance is false: " + print(instance));
  }
  EpsProof proof = prove_true_pr_sentence(instance, sig, axioms, options.prove);
  return Extraction{n, instance, std::move(proof), direct.has_eps(), std::move(problem), std::move(outcome)};
}

}  // namespace epsilon
