#pragma once

// Registry of primitive recursive function symbols.
//
// Declaration file format, one declaration per line ('#' starts a comment):
//
//   name/arity: lhs = rhs                      explicit definition (composition)
//   name/arity: base_equation ; step_equation  primitive recursion on the last argument
//   name/arity: opaque                         natively evaluated, bound at load time
//
// Recursion equations have the shapes  f(x1..xk, 0) = b  and
// f(x1..xk, S(y)) = s  where s may call f only as f(x1..xk, y). Every
// right-hand side may reference only parameters and earlier symbols.

#include "epsilon/ast.hpp"
#include "epsilon/errors.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace epsilon {

using NativeFn = std::function<Natural(std::span<const Natural>)>;

struct SymbolDef {
  enum class Kind { explicit_def, recursive, opaque };

  std::string name;
  std::size_t arity = 0;
  Kind kind = Kind::explicit_def;
  /// explicit: one name per argument; recursive: the leading arity-1 names
  std::vector<std::string> params;
  /// recursive: the step variable y
  std::string rec_var;
  /// explicit: the body; recursive: the base case
  std::optional<Term> base;
  /// recursive: the step case
  std::optional<Term> step;
  /// opaque: native implementation (may be empty until bound)
  NativeFn native;
  /// declaration line as written
  std::string text;
  /// base/step with parameters renamed to #0..#k-1 and the step variable to #y;
  /// filled in by Signature::declare
  std::optional<Term> base_pattern;
  std::optional<Term> step_pattern;
};

class Signature {
 public:
  /// Validates well-foundedness and equation shapes. Throws SignatureError.
  void declare(SymbolDef def);
  void bind_native(const std::string& name, NativeFn fn);

  const SymbolDef* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  const SymbolDef& at(std::size_t i) const { return symbols_.at(i); }
  const std::vector<SymbolDef>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }

  /// One declaration per line, in declaration order.
  std::string to_text() const;

 private:
  std::vector<SymbolDef> symbols_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

/// Parses the declaration file format. Opaque declarations are bound from
/// `natives` when a matching name is present.
Signature parse_signature(std::string_view text, const std::map<std::string, NativeFn>& natives = {});
/// Appends declarations to an existing signature.
void extend_signature(Signature& sig, std::string_view text, const std::map<std::string, NativeFn>& natives = {});

/// Text of the shipped default prelude.
std::string_view prelude_text();
/// plus, times, monus, lt, eq, pairing, bounded search and helpers.
const Signature& default_prelude();

/// One-step unfolding of f(args) by its defining equation. Explicit
/// definitions unfold for any arguments; recursive ones need the last
/// argument to be a numeral or Succ(s). Opaque symbols never unfold.
std::optional<Term> unfold_once(const Signature& sig, const Term& app);

}  // namespace epsilon
