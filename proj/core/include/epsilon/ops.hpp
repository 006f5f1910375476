#pragma once

// Binder and substitution machinery over the locally nameless representation.
// Every value substituted for a variable must be locally closed (no loose
// de Bruijn indices); values may still mention free names.

#include "epsilon/ast.hpp"

#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace epsilon {

/// Replaces the loose index `depth + i` by values[i]; higher loose indices
/// shift down by values.size().
Term instantiate(const Term& t, std::span<const Term> values);
Formula instantiate(const Formula& f, std::span<const Term> values);

/// Instantiates the binder of a body: A(x) with x := value.
inline Formula open(const Formula& body, const Term& value) {
  return instantiate(body, std::span<const Term>(&value, 1));
}

/// Abstracts free occurrences of `name` into the innermost binder position.
Term close(const Term& t, const std::string& name);
Formula close(const Formula& f, const std::string& name);

Term substitute(const Term& t, const std::string& name, const Term& value);
Formula substitute(const Formula& f, const std::string& name, const Term& value);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
void collect_free_vars(const Term& t, std::set<std::string>& out);
void collect_free_vars(const Formula& f, std::set<std::string>& out);

/// A name not in `avoid`: `base` itself, else base1, base2, ...
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Pre-order walk over every term position, descending into eps bodies and
/// binder bodies. Returning false from the callback skips that subtree.
void visit_terms(const Formula& f, const std::function<bool(const Term&)>& fn);
void visit_terms(const Term& t, const std::function<bool(const Term&)>& fn);

/// Distinct closed subterms in first-occurrence pre-order, including those
/// inside eps bodies. Numerals count as single terms.
std::vector<Term> closed_subterms(const Formula& f);
/// Distinct closed eps subterms in first-occurrence pre-order.
std::vector<Term> closed_eps_subterms(const Formula& f);
std::vector<Term> closed_eps_subterms(const Term& t);

/// Bottom-up rewrite of closed maximal eps terms (outside other eps terms).
Formula replace_maximal_eps(const Formula& f, const std::function<Term(const Term&)>& fn);
Term replace_maximal_eps(const Term& t, const std::function<Term(const Term&)>& fn);

/// If `t` is a numeral n > 0 or Succ(s), its predecessor term.
std::optional<Term> predecessor(const Term& t);

}  // namespace epsilon
