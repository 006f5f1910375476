#pragma once

// Standard-model evaluation of closed terms and closed quantifier-free
// formulas. Epsilon terms are opaque names: a maximal closed eps subterm is
// looked up whole in an Assignment and its body is never evaluated.

#include "epsilon/ast.hpp"
#include "epsilon/errors.hpp"
#include "epsilon/signature.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace epsilon {

inline constexpr std::uint64_t kDefaultEvalBudget = 100'000'000;

/// Finite map from closed eps terms to numbers; unmapped terms read as 0.
class Assignment {
 public:
  Natural get(const Term& eps) const;
  void set(const Term& eps, Natural value);
  bool erase(const Term& eps);
  bool contains(const Term& eps) const { return values_.contains(eps); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Entries ordered by printed eps term.
  std::vector<std::pair<Term, Natural>> sorted() const;

  /// "<eps> := <n>" per line, in printed order.
  std::string to_text() const;
  static Assignment parse(std::string_view text, const Signature& sig);

  friend bool operator==(const Assignment& a, const Assignment& b);

 private:
  std::unordered_map<Term, Natural, TermHash> values_;
};

/// Evaluation context sharing a memo table and a step budget across calls.
class Evaluator {
 public:
  explicit Evaluator(const Signature& sig, const Assignment* assignment = nullptr,
                     std::uint64_t budget = kDefaultEvalBudget);

  /// `t` must be closed. Throws PreconditionError otherwise, BudgetExceeded
  /// when the step budget runs out.
  Natural term(const Term& t);
  /// `f` must be closed and quantifier-free (bounded quantifiers allowed).
  bool formula(const Formula& f);

  /// Evaluates f(args) directly.
  Natural apply(const SymbolDef& def, std::vector<Natural> args);

  std::uint64_t steps() const { return steps_; }

 private:
  struct Frame;
  struct Env;
  Natural eval(const Term& t, const Env& env);
  bool holds(const Formula& f, const Env& env);
  Natural call(const SymbolDef& def, std::vector<Natural> args);
  Natural run_recursion(const SymbolDef& def, const std::vector<Natural>& args);
  void tick();

  struct KeyHash {
    std::size_t operator()(const std::pair<const SymbolDef*, std::vector<Natural>>& k) const;
  };

  const Signature& sig_;
  const Assignment* assignment_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::unordered_map<std::pair<const SymbolDef*, std::vector<Natural>>, Natural, KeyHash> memo_;
};

Natural eval_term(const Term& t, const Signature& sig, const Assignment& a = {},
                  std::uint64_t budget = kDefaultEvalBudget);
bool eval_qf(const Formula& f, const Signature& sig, const Assignment& a = {},
             std::uint64_t budget = kDefaultEvalBudget);

/// Least n <= cap with A[n] true, where A has exactly one free variable.
std::optional<Natural> least_witness(const Formula& a, const Signature& sig, const Natural& cap,
                                     std::uint64_t budget = kDefaultEvalBudget);

}  // namespace epsilon
