#include "epsilon/evaluator.hpp"

#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <algorithm>
#include <sstream>

namespace epsilon {

// ---- Assignment ---------------------------------------------------------------

Natural Assignment::get(const Term& eps) const {
  auto it = values_.find(eps);
  return it == values_.end() ? Natural(0) : it->second;
}

void Assignment::set(const Term& eps, Natural value) {
  if (!eps.is_eps() || !eps.closed()) throw PreconditionError("assignment keys must be closed eps terms: " + print(eps));
  values_.insert_or_assign(eps, std::move(value));
}

bool Assignment::erase(const Term& eps) { return values_.erase(eps) > 0; }

std::vector<std::pair<Term, Natural>> Assignment::sorted() const {
  std::vector<std::pair<std::string, std::pair<Term, Natural>>> keyed;
  keyed.reserve(values_.size());
  for (const auto& [k, v] : values_) keyed.push_back({print(k), {k, v}});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Term, Natural>> out;
  out.reserve(keyed.size());
  for (auto& [text, entry] : keyed) out.push_back(std::move(entry));
  return out;
}

std::string Assignment::to_text() const {
  std::string out;
  for (const auto& [k, v] : sorted()) out += print(k) + " := " + v.str() + "\n";
  return out;
}

Assignment Assignment::parse(std::string_view text, const Signature& sig) {
  Assignment a;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      std::size_t sep = line.rfind(":=");
      if (sep == std::string_view::npos) throw ParseError(ParseError::Kind::syntax, start, "expected '<eps term> := <n>'");
      Term key = [&] {
        try {
          return parse_term(line.substr(0, sep), sig);
        } catch (const ParseError& e) {
          throw ParseError(e.kind(), start + e.position(), e.message());
        }
      }();
      std::string digits;
      for (char c : line.substr(sep + 2)) {
        if (c != ' ' && c != '\t' && c != '\r') digits += c;
      }
      Natural v;
      try {
        v = parse_natural(digits);
      } catch (const std::exception&) {
        throw ParseError(ParseError::Kind::syntax, start + sep + 2, "expected a natural number");
      }
      if (!key.is_eps() || !key.closed()) throw ParseError(ParseError::Kind::syntax, start, "key is not a closed eps term");
      a.set(key, v);
    }
    start = end + 1;
  }
  return a;
}

bool operator==(const Assignment& a, const Assignment& b) { return a.values_ == b.values_; }

// ---- Evaluator ----------------------------------------------------------------

// Arguments of the symbol whose defining equation is being evaluated.
struct Evaluator::Frame {
  const SymbolDef* def;
  const std::vector<Natural>* args;
  Natural y;
  Natural self;
};

// Values of the enclosing bounded-quantifier variables, innermost last, and
// the active equation frame if any.
struct Evaluator::Env {
  std::vector<Natural> bound;
  const Frame* frame = nullptr;
};

Evaluator::Evaluator(const Signature& sig, const Assignment* assignment, std::uint64_t budget)
    : sig_(sig), assignment_(assignment), budget_(budget) {}

std::size_t Evaluator::KeyHash::operator()(const std::pair<const SymbolDef*, std::vector<Natural>>& k) const {
  std::size_t h = std::hash<const void*>()(k.first);
  for (const auto& v : k.second) h = h * 1000003u ^ hash_value(v);
  return h;
}

void Evaluator::tick() {
  if (++steps_ > budget_) throw BudgetExceeded("evaluation exceeded the budget of " + std::to_string(budget_) + " steps");
}

Natural Evaluator::term(const Term& t) {
  if (!t.closed()) throw PreconditionError("cannot evaluate open term " + print(t));
  return eval(t, Env{});
}

bool Evaluator::formula(const Formula& f) {
  if (!f.closed()) throw PreconditionError("cannot evaluate open formula " + print(f));
  if (f.has_quantifier()) {
    // Only quantifiers outside eps bodies matter; those inside are never evaluated.
    bool outer = false;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
      if (outer) return;
      if (g.is_quantifier()) {
        outer = true;
        return;
      }
      if (g.kind() != Formula::Kind::eq) {
        for (std::size_t i = 0; i < (g.kind() == Formula::Kind::negation || g.is_binder() ? 1u : 2u); ++i) scan(g.sub(i));
      }
    };
    scan(f);
    if (outer) throw PreconditionError("cannot evaluate quantified formula " + print(f));
  }
  return holds(f, Env{});
}

Natural Evaluator::apply(const SymbolDef& def, std::vector<Natural> args) { return call(def, std::move(args)); }

Natural Evaluator::eval(const Term& t, const Env& env) {
  tick();
  switch (t.kind()) {
    case Term::Kind::numeral:
      return t.value();
    case Term::Kind::succ:
      return eval(t.operand(), env) + 1;
    case Term::Kind::bound: {
      if (t.index() >= env.bound.size()) throw PreconditionError("dangling bound variable");
      return env.bound[env.bound.size() - 1 - t.index()];
    }
    case Term::Kind::var: {
      if (env.frame) {
        const std::string& n = t.name();
        if (n == "#y") return env.frame->y;
        if (n.size() > 1 && n[0] == '#') return (*env.frame->args)[std::stoul(n.substr(1))];
      }
      throw PreconditionError("cannot evaluate free variable " + t.name());
    }
    case Term::Kind::app: {
      if (env.frame && t.name() == env.frame->def->name) return env.frame->self;
      const SymbolDef* def = sig_.find(t.name());
      if (!def) throw SignatureError("undeclared symbol '" + t.name() + "'");
      std::vector<Natural> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(eval(a, env));
      return call(*def, std::move(args));
    }
    case Term::Kind::eps: {
      if (t.has_free_vars()) throw PreconditionError("cannot evaluate open eps term " + print(t));
      if (!assignment_) return 0;
      if (t.loose() == 0) return assignment_->get(t);
      std::vector<Term> values;
      for (std::size_t i = 0; i < t.loose(); ++i) values.push_back(make_numeral(env.bound[env.bound.size() - 1 - i]));
      return assignment_->get(instantiate(t, values));
    }
  }
  return 0;
}

bool Evaluator::holds(const Formula& f, const Env& env) {
  tick();
  switch (f.kind()) {
    case Formula::Kind::eq:
      return eval(f.lhs(), env) == eval(f.rhs(), env);
    case Formula::Kind::negation:
      return !holds(f.sub(), env);
    case Formula::Kind::conjunction:
      return holds(f.left(), env) && holds(f.right(), env);
    case Formula::Kind::disjunction:
      return holds(f.left(), env) || holds(f.right(), env);
    case Formula::Kind::implication:
      return !holds(f.left(), env) || holds(f.right(), env);
    case Formula::Kind::bounded_forall:
    case Formula::Kind::bounded_exists: {
      const bool universal = f.kind() == Formula::Kind::bounded_forall;
      Natural limit = eval(f.bound(), env);
      Env inner{env.bound, env.frame};
      inner.bound.push_back(0);
      for (Natural n = 0; n < limit; ++n) {
        inner.bound.back() = n;
        if (holds(f.body(), inner) != universal) return !universal;
      }
      return universal;
    }
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      throw PreconditionError("cannot evaluate quantified formula " + print(f));
  }
  return false;
}

Natural Evaluator::call(const SymbolDef& def, std::vector<Natural> args) {
  if (def.kind == SymbolDef::Kind::opaque && !def.native) {
    throw SignatureError("opaque symbol '" + def.name + "' has no native implementation");
  }
  auto key = std::make_pair(&def, std::move(args));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Natural result;
  switch (def.kind) {
    case SymbolDef::Kind::opaque:
      tick();
      result = def.native(key.second);
      break;
    case SymbolDef::Kind::explicit_def: {
      Frame frame{&def, &key.second, 0, 0};
      result = eval(*def.base_pattern, Env{{}, &frame});
      break;
    }
    case SymbolDef::Kind::recursive:
      result = run_recursion(def, key.second);
      break;
  }
  if (memo_.size() > (1u << 20)) memo_.clear();
  memo_.emplace(std::move(key), result);
  return result;
}

Natural Evaluator::run_recursion(const SymbolDef& def, const std::vector<Natural>& args) {
  // Iterate from the base case upwards instead of recursing on the last argument.
  const Natural& last = args.back();
  Frame frame{&def, &args, 0, 0};
  Env env{{}, &frame};
  Natural value = eval(*def.base_pattern, env);
  for (Natural y = 0; y < last; ++y) {
    frame.y = y;
    frame.self = value;
    value = eval(*def.step_pattern, env);
  }
  return value;
}

Natural eval_term(const Term& t, const Signature& sig, const Assignment& a, std::uint64_t budget) {
  return Evaluator(sig, &a, budget).term(t);
}

bool eval_qf(const Formula& f, const Signature& sig, const Assignment& a, std::uint64_t budget) {
  return Evaluator(sig, &a, budget).formula(f);
}

std::optional<Natural> least_witness(const Formula& a, const Signature& sig, const Natural& cap, std::uint64_t budget) {
  auto vars = free_vars(a);
  if (vars.size() != 1) throw PreconditionError("least_witness needs exactly one free variable, found " + std::to_string(vars.size()));
  const std::string& x = *vars.begin();
  Formula body = close(a, x);
  Assignment empty;
  Evaluator ev(sig, &empty, budget);
  for (Natural n = 0; n <= cap; ++n) {
    if (ev.formula(open(body, make_numeral(n)))) return n;
  }
  return std::nullopt;
}

}  // namespace epsilon
