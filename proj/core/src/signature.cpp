#include "epsilon/signature.hpp"

#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"

#include <set>
#include <sstream>

namespace epsilon {

namespace detail {
extern const std::string_view prelude_source;
}

namespace {

std::string param_slot(std::size_t i) { return "#" + std::to_string(i); }
const std::string kStepSlot = "#y";

bool mentions_symbol(const Term& t, const std::string& name) {
  bool found = false;
  visit_terms(t, [&](const Term& s) {
    if (found) return false;
    if (s.kind() == Term::Kind::app && s.name() == name) found = true;
    return !found;
  });
  return found;
}

// Every call of `name` inside `t` must be exactly name(params..., y).
bool self_calls_are_recursive(const Term& t, const SymbolDef& def) {
  bool ok = true;
  visit_terms(t, [&](const Term& s) {
    if (!ok) return false;
    if (s.kind() == Term::Kind::app && s.name() == def.name) {
      const auto& a = s.args();
      for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (a[i] != make_var(def.params[i])) ok = false;
      }
      if (a.back() != make_var(def.rec_var)) ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

void require_vars_within(const Term& t, const std::set<std::string>& allowed, const std::string& sym) {
  for (const auto& v : free_vars(t)) {
    if (!allowed.contains(v)) throw SignatureError("'" + sym + "': variable '" + v + "' is not a parameter");
  }
}

Term rename_to_slots(Term t, const SymbolDef& def) {
  // Route through temporaries first in case a parameter is literally named like a slot.
  for (std::size_t i = 0; i < def.params.size(); ++i) t = substitute(t, def.params[i], make_var("#t" + std::to_string(i)));
  if (!def.rec_var.empty()) t = substitute(t, def.rec_var, make_var("#ty"));
  for (std::size_t i = 0; i < def.params.size(); ++i) t = substitute(t, "#t" + std::to_string(i), make_var(param_slot(i)));
  if (!def.rec_var.empty()) t = substitute(t, "#ty", make_var(kStepSlot));
  return t;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void Signature::declare(SymbolDef def) {
  if (!is_identifier(def.name)) throw SignatureError("invalid symbol name '" + def.name + "'");
  if (by_name_.contains(def.name)) throw SignatureError("symbol '" + def.name + "' declared twice");
  if (def.arity == 0) throw SignatureError("'" + def.name + "': arity must be at least 1");

  auto check_symbols = [&](const Term& t, bool allow_self) {
    visit_terms(t, [&](const Term& s) {
      if (s.kind() == Term::Kind::app) {
        if (s.name() == def.name) {
          if (!allow_self) throw SignatureError("'" + def.name + "' refers to itself outside its step equation");
        } else {
          const SymbolDef* d = find(s.name());
          if (!d) throw SignatureError("'" + def.name + "' refers to undeclared symbol '" + s.name() + "'");
          if (d->arity != s.args().size()) throw SignatureError("'" + def.name + "': arity mismatch calling '" + s.name() + "'");
        }
      }
      return true;
    });
  };

  switch (def.kind) {
    case SymbolDef::Kind::opaque:
      break;
    case SymbolDef::Kind::explicit_def: {
      if (def.params.size() != def.arity || !def.base) throw SignatureError("'" + def.name + "': malformed explicit definition");
      std::set<std::string> allowed(def.params.begin(), def.params.end());
      if (allowed.size() != def.params.size()) throw SignatureError("'" + def.name + "': repeated parameter");
      require_vars_within(*def.base, allowed, def.name);
      check_symbols(*def.base, false);
      if (def.base->has_eps() || def.base->has_quantifier()) throw SignatureError("'" + def.name + "': body must be a plain term");
      def.base_pattern = rename_to_slots(*def.base, def);
      break;
    }
    case SymbolDef::Kind::recursive: {
      if (def.params.size() + 1 != def.arity || !def.base || !def.step || def.rec_var.empty()) {
        throw SignatureError("'" + def.name + "': malformed recursion equations");
      }
      std::set<std::string> allowed(def.params.begin(), def.params.end());
      if (allowed.size() != def.params.size() || allowed.contains(def.rec_var)) {
        throw SignatureError("'" + def.name + "': repeated parameter");
      }
      require_vars_within(*def.base, allowed, def.name);
      allowed.insert(def.rec_var);
      require_vars_within(*def.step, allowed, def.name);
      check_symbols(*def.base, false);
      check_symbols(*def.step, true);
      if (mentions_symbol(*def.base, def.name)) throw SignatureError("'" + def.name + "': base case refers to itself");
      if (!self_calls_are_recursive(*def.step, def)) {
        throw SignatureError("'" + def.name + "': step may only call " + def.name + " on the predecessor");
      }
      if (def.base->has_eps() || def.step->has_eps() || def.base->has_quantifier() || def.step->has_quantifier()) {
        throw SignatureError("'" + def.name + "': equations must be plain terms");
      }
      def.base_pattern = rename_to_slots(*def.base, def);
      def.step_pattern = rename_to_slots(*def.step, def);
      break;
    }
  }
  by_name_.emplace(def.name, symbols_.size());
  symbols_.push_back(std::move(def));
}

void Signature::bind_native(const std::string& name, NativeFn fn) {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw SignatureError("cannot bind unknown symbol '" + name + "'");
  auto& def = symbols_[it->second];
  if (def.kind != SymbolDef::Kind::opaque) throw SignatureError("'" + name + "' is not opaque");
  def.native = std::move(fn);
}

const SymbolDef* Signature::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : &symbols_[it->second];
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string Signature::to_text() const {
  std::string out;
  for (const auto& d : symbols_) out += d.text + "\n";
  return out;
}

namespace {

SymbolDef parse_declaration(const std::string& line, const Signature& sig, const std::map<std::string, NativeFn>& natives) {
  auto colon = line.find(':');
  auto slash = line.find('/');
  if (colon == std::string::npos || slash == std::string::npos || slash > colon) {
    throw SignatureError("expected 'name/arity: ...' in: " + line);
  }
  SymbolDef def;
  def.text = line;
  def.name = trim(std::string_view(line).substr(0, slash));
  std::string arity_text = trim(std::string_view(line).substr(slash + 1, colon - slash - 1));
  try {
    std::size_t used = 0;
    def.arity = std::stoul(arity_text, &used);
    if (used != arity_text.size()) throw std::invalid_argument(arity_text);
  } catch (const std::exception&) {
    throw SignatureError("bad arity '" + arity_text + "' in: " + line);
  }
  std::string rest = trim(std::string_view(line).substr(colon + 1));
  if (rest == "opaque") {
    def.kind = SymbolDef::Kind::opaque;
    if (auto it = natives.find(def.name); it != natives.end()) def.native = it->second;
    return def;
  }

  // Parse the equations against the signature extended by a stub of the new symbol.
  Signature scratch = sig;
  SymbolDef stub;
  stub.name = def.name;
  stub.arity = def.arity;
  stub.kind = SymbolDef::Kind::opaque;
  stub.text = def.name;
  scratch.declare(stub);

  auto parse_equation = [&](const std::string& text) -> std::pair<Term, Term> {
    Formula f = [&] {
      try {
        return parse_formula(text, scratch);
      } catch (const ParseError& e) {
        throw SignatureError("'" + def.name + "': " + e.what() + " in equation: " + text);
      }
    }();
    if (f.kind() != Formula::Kind::eq) throw SignatureError("'" + def.name + "': not an equation: " + text);
    if (f.lhs().kind() != Term::Kind::app || f.lhs().name() != def.name) {
      throw SignatureError("'" + def.name + "': left side must apply " + def.name + ": " + text);
    }
    return {f.lhs(), f.rhs()};
  };
  auto leading_params = [&](const Term& lhs, std::size_t count) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) {
      const Term& a = lhs.args()[i];
      if (a.kind() != Term::Kind::var) throw SignatureError("'" + def.name + "': parameters must be variables");
      names.push_back(a.name());
    }
    return names;
  };

  auto semi = rest.find(';');
  if (semi == std::string::npos) {
    auto [lhs, rhs] = parse_equation(rest);
    def.kind = SymbolDef::Kind::explicit_def;
    def.params = leading_params(lhs, def.arity);
    def.base = rhs;
    return def;
  }

  def.kind = SymbolDef::Kind::recursive;
  auto [base_lhs, base_rhs] = parse_equation(trim(std::string_view(rest).substr(0, semi)));
  auto [step_lhs, step_rhs] = parse_equation(trim(std::string_view(rest).substr(semi + 1)));
  def.params = leading_params(base_lhs, def.arity - 1);
  if (leading_params(step_lhs, def.arity - 1) != def.params) {
    throw SignatureError("'" + def.name + "': base and step equations must use the same parameter names");
  }
  const Term& base_last = base_lhs.args().back();
  if (!base_last.is_numeral() || base_last.value() != 0) throw SignatureError("'" + def.name + "': base case must be at 0");
  const Term& step_last = step_lhs.args().back();
  if (step_last.kind() != Term::Kind::succ || step_last.operand().kind() != Term::Kind::var) {
    throw SignatureError("'" + def.name + "': step case must be at S(y)");
  }
  def.rec_var = step_last.operand().name();
  def.base = base_rhs;
  def.step = step_rhs;
  return def;
}

}  // namespace

void extend_signature(Signature& sig, std::string_view text, const std::map<std::string, NativeFn>& natives) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    sig.declare(parse_declaration(line, sig, natives));
  }
}

Signature parse_signature(std::string_view text, const std::map<std::string, NativeFn>& natives) {
  Signature sig;
  extend_signature(sig, text, natives);
  return sig;
}

std::string_view prelude_text() { return detail::prelude_source; }

const Signature& default_prelude() {
  static const Signature sig = parse_signature(prelude_text());
  return sig;
}

std::optional<Term> unfold_once(const Signature& sig, const Term& app) {
  if (app.kind() != Term::Kind::app) return std::nullopt;
  const SymbolDef* def = sig.find(app.name());
  if (!def || def->arity != app.args().size()) return std::nullopt;
  for (const auto& a : app.args()) {
    if (a.loose() != 0) return std::nullopt;
  }
  auto fill = [&](Term pattern, std::size_t nparams) {
    for (std::size_t i = 0; i < nparams; ++i) pattern = substitute(pattern, param_slot(i), app.args()[i]);
    return pattern;
  };
  switch (def->kind) {
    case SymbolDef::Kind::opaque:
      return std::nullopt;
    case SymbolDef::Kind::explicit_def:
      return fill(*def->base_pattern, def->arity);
    case SymbolDef::Kind::recursive: {
      const Term& last = app.args().back();
      if (last.is_numeral() && last.value() == 0) return fill(*def->base_pattern, def->arity - 1);
      auto pred = predecessor(last);
      if (!pred) return std::nullopt;
      Term t = fill(*def->step_pattern, def->arity - 1);
      return substitute(t, kStepSlot, *pred);
    }
  }
  return std::nullopt;
}

}  // namespace epsilon
