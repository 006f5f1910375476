#pragma once

// Proof checking by propositional consequence over closed quantifier-free
// formulas, and proof generation for true closed PR sentences.

#include "epsilon/ast.hpp"
#include "epsilon/errors.hpp"
#include "epsilon/evaluator.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/signature.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace epsilon {

inline constexpr std::size_t kDefaultAtomCap = 24;

class AtomCapExceeded : public Error {
 public:
  using Error::Error;
};

class NotTrue : public Error {
 public:
  using Error::Error;
};

/// Atoms are equations and bounded quantifications, compared structurally.
/// Throws AtomCapExceeded when more than `atom_cap` distinct atoms occur.
bool is_taut_consequence(std::span<const Formula> premises, const Formula& conclusion,
                         std::size_t atom_cap = kDefaultAtomCap);

enum class RejectReason {
  none,
  forward_reference,
  not_closed,
  not_qf,
  bad_recursion,
  bad_identity,
  bad_critical,
  bad_axiom_index,
  axiom_mismatch,
  not_tautological,
  atom_cap,
};

/// Machine-readable code such as "forward-reference".
std::string_view reason_code(RejectReason r);

struct Verdict {
  bool accepted = true;
  std::size_t line = 0;
  RejectReason reason = RejectReason::none;
  std::string detail;

  explicit operator bool() const { return accepted; }
  /// "accepted" or "rejected <line> <code>: <detail>"
  std::string to_text() const;
};

/// Instances of a defining equation, in either orientation:
///   f(args) = unfolding of f(args)
///   g(numerals) = numeral, for an opaque g, checked natively
/// and the bounded-quantifier unfolding schemata, where b' is b+1:
///   all x < 0. A                 not ex x < 0. A
///   (all x < b'. A) -> (all x < b. A) and A(b)      and its converse
///   (ex x < b'. A) -> (ex x < b. A) or A(b)         and its converse
bool is_recursion_instance(const Formula& f, const Signature& sig, std::uint64_t budget = kDefaultEvalBudget);

/// t = t;  t = s -> l = r;  t = s -> (A -> B) with A atomic.
/// In the last two, r (resp. B) arises from l (resp. A) by replacing some
/// occurrences of t with s. Numerals count as iterated successors.
bool is_identity_instance(const Formula& f);

Verdict check_eps_proof(const EpsProof& p, const Signature& sig, std::span<const Formula> axioms,
                        std::uint64_t budget = kDefaultEvalBudget);

struct ProveOptions {
  std::size_t max_lines = 1'000'000;
  std::uint64_t eval_budget = kDefaultEvalBudget;
};

/// Proof of a true, closed, eps-free, quantifier-free formula whose last line
/// is f. False atoms are refuted through the characteristic function eq/2 and
/// the axiom "not 0 = S(0)", which must be in `axioms`. Throws NotTrue if f is
/// false, BudgetExceeded when more than max_lines lines would be needed.
EpsProof prove_true_pr_sentence(const Formula& f, const Signature& sig, std::span<const Formula> axioms,
                                const ProveOptions& options = {});

}  // namespace epsilon
