#pragma once

// Quantifier-free epsilon proofs and their line-oriented file format.
//
//   <index> | <formula> | <justification>
//
// where index counts from 0 and must equal the line's position, and the
// justification is one of
//
//   recursion                 instance of a defining equation
//   identity                  reflexivity or substitution of equals
//   critical <t> ; <e>        A(t) -> A(e) for e = eps x. A(x)
//   axiom <k>                 the k-th supplied non-logical axiom (from 0)
//   taut <i>, <j>, ...        propositional consequence of earlier lines
//
// Blank lines and lines starting with '#' are ignored.

#include "epsilon/ast.hpp"
#include "epsilon/signature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epsilon {

struct Justification {
  enum class Kind { recursion, identity, critical, axiom, taut };

  Kind kind = Kind::taut;
  /// critical: witness term t and eps term e
  std::optional<Term> witness;
  std::optional<Term> eps;
  /// axiom: index into the supplied axiom list
  std::size_t axiom = 0;
  /// taut: cited lines
  std::vector<std::size_t> premises;

  static Justification recursion() { return {Kind::recursion, {}, {}, 0, {}}; }
  static Justification identity() { return {Kind::identity, {}, {}, 0, {}}; }
  static Justification critical(Term t, Term e) { return {Kind::critical, std::move(t), std::move(e), 0, {}}; }
  static Justification axiom_ref(std::size_t k) { return {Kind::axiom, {}, {}, k, {}}; }
  static Justification taut(std::vector<std::size_t> lines) { return {Kind::taut, {}, {}, 0, std::move(lines)}; }
};

struct ProofLine {
  Formula formula;
  Justification justification;
};

struct EpsProof {
  std::vector<ProofLine> lines;

  std::size_t size() const { return lines.size(); }
  bool empty() const { return lines.empty(); }
  const Formula& conclusion() const { return lines.back().formula; }
};

bool operator==(const Justification& a, const Justification& b);
inline bool operator==(const ProofLine& a, const ProofLine& b) {
  return a.formula == b.formula && a.justification == b.justification;
}
inline bool operator==(const EpsProof& a, const EpsProof& b) { return a.lines == b.lines; }

std::string print(const Justification& j);
/// One line per proof line, newline-terminated.
std::string print(const EpsProof& p);

/// Throws ParseError; the position is counted from the start of the file.
EpsProof parse_proof(std::string_view text, const Signature& sig);

/// One formula per non-blank, non-comment line.
std::vector<Formula> parse_formula_lines(std::string_view text, const Signature& sig);

}  // namespace epsilon
