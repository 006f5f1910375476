#pragma once

// Goedel numbering, the executable proof predicate, and the self-subsuming
// Pi-2 sentences built from it.
//
// Codes are byte strings read as big-endian numbers:
//
//   code = [0x01][kind][payload]      kind: 1 term, 2 formula, 3 proof
//
// The payload is a prefix-free tagged serialization (LEB128 lengths, numerals
// as length-prefixed big-endian bytes). Every constituent's payload is a
// proper substring of its parent's, so a constituent always has fewer bytes
// and hence a smaller code, and a numeral n is always below the code of
// anything containing it.

#include "epsilon/kernel.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/signature.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace epsilon {

using Code = Natural;
using Decoded = std::variant<Term, Formula, EpsProof>;

Code encode(const Term& t);
Code encode(const Formula& f);
Code encode(const EpsProof& p);

/// Throws DecodeError on anything that is not the code of an object.
Decoded decode(const Code& c);
Term decode_term(const Code& c);
Formula decode_formula(const Code& c);
EpsProof decode_proof(const Code& c);

/// p codes a proof accepted by the kernel whose last line is the formula coded by f.
bool proof_pred(const Code& p, const Code& f, const Signature& sig, std::span<const Formula> axioms);

struct Pi2Match {
  bool ok = false;
  /// the recognized sentence all x. ex y. A(x, y)
  std::optional<Formula> sentence;

  /// A(m, n) with numerals substituted; requires ok
  Formula instance(const Natural& m, const Natural& n) const;
  /// A(x, y) with its binders opened to the free variables named by the hints
  Formula matrix() const;
};

/// Codes of sentences all x. ex y. A(x, y) with A quantifier-free and eps-free.
Pi2Match pi2_recognizer(const Code& f);
Pi2Match pi2_match(const Formula& f);

/// The Pi-2 sentence whose epsilon translation is `conclusion`, if any.
std::optional<Formula> untranslate_pi2(const Formula& conclusion);

/// Code of the Pi-2 sentence proved by the proof coded by p, else 0.
Code pi2_theorem(const Code& p, const Signature& sig, std::span<const Formula> axioms);

/// Extends `base` with opaque symbols interpreting the arithmetization:
///   prf(p, f)       1 if proof_pred(p, f), else 0
///   pi2(f)          1 if f codes a Pi-2 sentence, else 0
///   pi2thm(p)       pi2_theorem(p)
///   inst(f, m, n)   code of A(m, n) when f codes all x. ex y. A, else 0
/// Their natives check proofs against `base` and `axioms`.
Signature arithmetize(const Signature& base, std::vector<Formula> axioms);

struct StarFormula {
  enum class Form { star, doublestar, triplestar };
  Form form;
  Formula formula;
  /// A***(x, y), quantifier-free with free variables x and y
  Formula matrix;
};

std::string_view form_name(StarFormula::Form f);
std::optional<StarFormula::Form> parse_form(std::string_view name);

/// `arith` must come from arithmetize.
StarFormula build_star(const Signature& arith, StarFormula::Form form = StarFormula::Form::star);
inline StarFormula build_triplestar(const Signature& arith) { return build_star(arith, StarFormula::Form::triplestar); }

/// all x1. ... all xk. R  becomes  all z. all x1 < z. ... all xk < z. R  for k >= 2.
Formula contract_quantifiers(const Formula& f);

struct InstanceOptions {
  /// y is searched in 0..cap
  Natural cap = 64;
  /// witness search bound when y has to be constructed
  Natural witness_cap = 1000;
  /// line budget for proving an instance of the matrix
  std::size_t prove_lines = 20000;
  std::uint64_t eval_budget = kDefaultEvalBudget;
};

struct InstanceRow {
  Natural p;
  std::optional<Natural> y;
  bool anomaly = false;
  std::string note;
  /// the proof coded by a constructed y
  std::optional<EpsProof> coded_proof;
};

/// One row: the least y <= cap with A***(p, y) true, else a y built from a
/// proof of the instance the antecedent asks for.
InstanceRow check_instance(const StarFormula& s, const Natural& p, const Signature& base, const Signature& arith,
                           std::span<const Formula> axioms, const InstanceOptions& options = {});
std::vector<InstanceRow> check_instances(const StarFormula& s, const Natural& range_max, const Signature& base,
                                         const Signature& arith, std::span<const Formula> axioms,
                                         const InstanceOptions& options = {});
/// Tab-separated rows: p, y (or "-"), anomaly flag 0/1, note.
std::string report_text(std::span<const InstanceRow> rows);

}  // namespace epsilon
