#pragma once

#include "epsilon/ast.hpp"
#include "epsilon/signature.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace epsilon {

/// Critical axiom A(t) -> A(e) for e = eps x. A(x).
struct CriticalFormula {
  Term witness;
  Term eps;
  Formula formula;
};

/// Builds the critical formula; `t` and `e` must be locally closed.
CriticalFormula make_critical(const Term& t, const Term& e);

/// Recovers (t, e) from a formula of critical shape, if it has one. When the
/// matrix does not mention its variable, the witness is reported as 0.
std::optional<CriticalFormula> as_critical(const Formula& f);

/// Replaces every unbounded quantifier, innermost first:
///   ex x. A   becomes  A'(eps x. A')
///   all x. A  becomes  A'(eps x. not A')
/// where A' is the translation of A. Bounded quantifiers are kept.
Formula epsilon_translate(const Formula& f);
/// Axioms are rewritten by the same translation.
inline Formula rewrite_axiom(const Formula& f) { return epsilon_translate(f); }
std::vector<Formula> rewrite_axioms(std::span<const Formula> axioms);

/// 1 + the largest rank of an eps term properly inside `e`.
std::size_t rank(const Term& e);

/// Every critical formula over a closed eps term e and a closed term t != e
/// occurring in the lines, deduplicated and sorted by printed formula.
std::vector<CriticalFormula> critical_instances(std::span<const Formula> lines);

/// The non-logical axioms shipped with the prelude, already rewritten.
std::vector<Formula> default_axioms(const Signature& sig);
/// Their source text, before rewriting.
std::string_view default_axioms_text();

}  // namespace epsilon
