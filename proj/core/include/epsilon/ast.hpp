#pragma once

// Abstract syntax of arithmetic with primitive recursive function symbols,
// bounded and unbounded quantifiers, and epsilon terms.
//
// Representation is locally nameless: free variables carry names, bound
// variables are de Bruijn indices counted outward from the innermost binder.
// Binders keep their source name only as a printing hint, so structural
// equality is alpha-equivalence and epsilon terms can be used directly as
// map keys. Numerals are stored as a count; Succ applied to a numeral always
// collapses into the next numeral, so every numeral has exactly one form.

#include "epsilon/natural.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace epsilon {

namespace detail {
struct TermNode;
struct FormulaNode;
struct Build;
}  // namespace detail

class Formula;

class Term {
 public:
  enum class Kind : std::uint8_t { numeral, succ, var, bound, app, eps };

  Kind kind() const;
  bool is_numeral() const { return kind() == Kind::numeral; }
  bool is_eps() const { return kind() == Kind::eps; }

  /// numeral value
  const Natural& value() const;
  /// variable name, function symbol, or binder hint of an eps term
  const std::string& name() const;
  /// de Bruijn index of a bound variable
  std::size_t index() const;
  /// Succ operand (one element) or application arguments
  const std::vector<Term>& args() const;
  /// Succ operand
  const Term& operand() const { return args().front(); }
  /// body of an eps term; bound variable 0 refers to the eps binder
  const Formula& body() const;

  std::size_t hash() const;
  /// 1 + largest loose de Bruijn index, 0 when locally closed
  std::uint32_t loose() const;
  bool has_free_vars() const;
  bool has_eps() const;
  bool has_quantifier() const;
  /// no free names and no loose indices
  bool closed() const { return loose() == 0 && !has_free_vars(); }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  friend struct detail::Build;
  std::shared_ptr<const detail::TermNode> node_;
};

class Formula {
 public:
  enum class Kind : std::uint8_t {
    eq,
    negation,
    conjunction,
    disjunction,
    implication,
    bounded_forall,
    bounded_exists,
    forall,
    exists,
  };

  Kind kind() const;
  bool is_binder() const;
  bool is_bounded() const { return kind() == Kind::bounded_forall || kind() == Kind::bounded_exists; }
  bool is_quantifier() const { return kind() == Kind::forall || kind() == Kind::exists; }
  bool is_connective() const;

  /// eq: left/right; bounded quantifier: bound
  const Term& lhs() const;
  const Term& rhs() const;
  const Term& bound() const;
  /// negation operand, binary operands, binder body
  const Formula& sub(std::size_t i = 0) const;
  const Formula& left() const { return sub(0); }
  const Formula& right() const { return sub(1); }
  const Formula& body() const { return sub(0); }
  const std::string& hint() const;

  std::size_t hash() const;
  std::uint32_t loose() const;
  bool has_free_vars() const;
  bool has_eps() const;
  /// contains Forall/Exists anywhere, including inside eps bodies
  bool has_quantifier() const;
  bool closed() const { return loose() == 0 && !has_free_vars(); }
  bool quantifier_free() const { return !has_quantifier(); }

  bool same_node(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  friend struct detail::Build;
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {

struct Meta {
  std::size_t hash = 0;
  std::uint32_t loose = 0;
  bool free_vars = false;
  bool eps = false;
  bool quantifier = false;
};

struct TermNode {
  Term::Kind kind{};
  Natural value{};
  std::string name{};
  std::size_t index = 0;
  std::vector<Term> args{};
  std::optional<Formula> body{};
  Meta meta{};
};

struct FormulaNode {
  Formula::Kind kind{};
  std::string hint{};
  std::vector<Term> terms{};
  std::vector<Formula> subs{};
  Meta meta{};
};

struct Build {
  static Term term(TermNode node);
  static Formula formula(FormulaNode node);
  static const TermNode& node(const Term& t) { return *t.node_; }
  static const FormulaNode& node(const Formula& f) { return *f.node_; }
};

}  // namespace detail

// ---- inline accessors -------------------------------------------------------

inline Term::Kind Term::kind() const { return node_->kind; }
inline const Natural& Term::value() const { return node_->value; }
inline const std::string& Term::name() const { return node_->name; }
inline std::size_t Term::index() const { return node_->index; }
inline const std::vector<Term>& Term::args() const { return node_->args; }
inline const Formula& Term::body() const { return *node_->body; }
inline std::size_t Term::hash() const { return node_->meta.hash; }
inline std::uint32_t Term::loose() const { return node_->meta.loose; }
inline bool Term::has_free_vars() const { return node_->meta.free_vars; }
inline bool Term::has_eps() const { return node_->meta.eps; }
inline bool Term::has_quantifier() const { return node_->meta.quantifier; }

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const Term& Formula::lhs() const { return node_->terms[0]; }
inline const Term& Formula::rhs() const { return node_->terms[1]; }
inline const Term& Formula::bound() const { return node_->terms[0]; }
inline const Formula& Formula::sub(std::size_t i) const { return node_->subs[i]; }
inline const std::string& Formula::hint() const { return node_->hint; }
inline std::size_t Formula::hash() const { return node_->meta.hash; }
inline std::uint32_t Formula::loose() const { return node_->meta.loose; }
inline bool Formula::has_free_vars() const { return node_->meta.free_vars; }
inline bool Formula::has_eps() const { return node_->meta.eps; }
inline bool Formula::has_quantifier() const { return node_->meta.quantifier; }
inline bool Formula::is_binder() const {
  return is_bounded() || is_quantifier();
}
inline bool Formula::is_connective() const {
  auto k = kind();
  return k == Kind::negation || k == Kind::conjunction || k == Kind::disjunction ||
         k == Kind::implication;
}

// ---- construction -----------------------------------------------------------

Term make_numeral(Natural n);
inline Term make_zero() { return make_numeral(0); }
/// Succ(numeral n) collapses into numeral n+1.
Term make_succ(Term t);
Term make_var(std::string name);
Term make_bound(std::size_t index);
Term make_app(std::string symbol, std::vector<Term> args);
/// eps name. body, abstracting free occurrences of `name` in `body`.
Term make_eps(const std::string& name, const Formula& body);
/// eps with an already-abstracted body (bound index 0 is the binder).
Term make_eps_raw(std::string hint, Formula body);

Formula make_eq(Term a, Term b);
Formula make_not(Formula f);
Formula make_and(Formula a, Formula b);
Formula make_or(Formula a, Formula b);
Formula make_implies(Formula a, Formula b);
Formula make_forall(const std::string& name, const Formula& body);
Formula make_exists(const std::string& name, const Formula& body);
Formula make_bounded_forall(const std::string& name, Term bound, const Formula& body);
Formula make_bounded_exists(const std::string& name, Term bound, const Formula& body);
/// Binder with an already-abstracted body; `kind` must be a binder kind.
Formula make_binder_raw(Formula::Kind kind, std::string hint, Formula body,
                        std::optional<Term> bound = std::nullopt);
/// Rebuild a connective from new operands, keeping the kind.
Formula make_connective(Formula::Kind kind, std::vector<Formula> subs);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

}  // namespace epsilon
