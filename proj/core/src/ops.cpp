#include "epsilon/ops.hpp"

#include <stdexcept>
#include <unordered_set>

namespace epsilon {

namespace {

// Generic structural rebuild. `term_fn` returns a replacement for a term
// position given the binder depth, or nullopt to recurse normally.
struct Rewriter {
  std::function<std::optional<Term>(const Term&, std::size_t)> term_fn;
  std::function<bool(const Term&, std::size_t)> term_skip;
  std::function<bool(const Formula&, std::size_t)> formula_skip;

  Term term(const Term& t, std::size_t depth) const {
    if (term_skip && term_skip(t, depth)) return t;
    if (auto r = term_fn(t, depth)) return *r;
    switch (t.kind()) {
      case Term::Kind::numeral:
      case Term::Kind::var:
      case Term::Kind::bound:
        return t;
      case Term::Kind::succ: {
        Term inner = term(t.operand(), depth);
        return inner.same_node(t.operand()) ? t : make_succ(std::move(inner));
      }
      case Term::Kind::app: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        bool changed = false;
        for (const auto& a : t.args()) {
          args.push_back(term(a, depth));
          changed = changed || !args.back().same_node(a);
        }
        return changed ? make_app(t.name(), std::move(args)) : t;
      }
      case Term::Kind::eps: {
        Formula b = formula(t.body(), depth + 1);
        return b.same_node(t.body()) ? t : make_eps_raw(t.name(), std::move(b));
      }
    }
    return t;
  }

  Formula formula(const Formula& f, std::size_t depth) const {
    if (formula_skip && formula_skip(f, depth)) return f;
    const auto& n = detail::Build::node(f);
    switch (f.kind()) {
      case Formula::Kind::eq: {
        Term a = term(f.lhs(), depth);
        Term b = term(f.rhs(), depth);
        if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
        return make_eq(std::move(a), std::move(b));
      }
      case Formula::Kind::negation:
      case Formula::Kind::conjunction:
      case Formula::Kind::disjunction:
      case Formula::Kind::implication: {
        std::vector<Formula> subs;
        bool changed = false;
        for (const auto& s : n.subs) {
          subs.push_back(formula(s, depth));
          changed = changed || !subs.back().same_node(s);
        }
        return changed ? make_connective(f.kind(), std::move(subs)) : f;
      }
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists: {
        Term b = term(f.bound(), depth);
        Formula body = formula(f.body(), depth + 1);
        if (b.same_node(f.bound()) && body.same_node(f.body())) return f;
        return make_binder_raw(f.kind(), f.hint(), std::move(body), std::move(b));
      }
      case Formula::Kind::forall:
      case Formula::Kind::exists: {
        Formula body = formula(f.body(), depth + 1);
        if (body.same_node(f.body())) return f;
        return make_binder_raw(f.kind(), f.hint(), std::move(body));
      }
    }
    return f;
  }
};

Rewriter instantiator(std::span<const Term> values) {
  for (const auto& v : values) {
    if (v.loose() != 0) throw std::invalid_argument("instantiate: value is not locally closed");
  }
  Rewriter r;
  const std::size_t n = values.size();
  r.term_skip = [](const Term& t, std::size_t depth) { return t.loose() <= depth; };
  r.formula_skip = [](const Formula& f, std::size_t depth) { return f.loose() <= depth; };
  r.term_fn = [values, n](const Term& t, std::size_t depth) -> std::optional<Term> {
    if (t.kind() != Term::Kind::bound) return std::nullopt;
    if (t.index() < depth) return t;
    std::size_t k = t.index() - depth;
    if (k < n) return values[k];
    return make_bound(t.index() - n);
  };
  return r;
}

Rewriter closer(const std::string& name) {
  Rewriter r;
  r.term_skip = [](const Term& t, std::size_t) { return !t.has_free_vars(); };
  r.formula_skip = [](const Formula& f, std::size_t) { return !f.has_free_vars(); };
  r.term_fn = [&name](const Term& t, std::size_t depth) -> std::optional<Term> {
    if (t.kind() == Term::Kind::var && t.name() == name) return make_bound(depth);
    return std::nullopt;
  };
  return r;
}

Rewriter substituter(const std::string& name, const Term& value) {
  if (value.loose() != 0) throw std::invalid_argument("substitute: value is not locally closed");
  Rewriter r;
  r.term_skip = [](const Term& t, std::size_t) { return !t.has_free_vars(); };
  r.formula_skip = [](const Formula& f, std::size_t) { return !f.has_free_vars(); };
  r.term_fn = [&name, &value](const Term& t, std::size_t) -> std::optional<Term> {
    if (t.kind() == Term::Kind::var && t.name() == name) return value;
    return std::nullopt;
  };
  return r;
}

}  // namespace

Term instantiate(const Term& t, std::span<const Term> values) {
  return instantiator(values).term(t, 0);
}

Formula instantiate(const Formula& f, std::span<const Term> values) {
  return instantiator(values).formula(f, 0);
}

Term close(const Term& t, const std::string& name) {
  if (t.loose() != 0) throw std::invalid_argument("close: term is not locally closed");
  return closer(name).term(t, 0);
}

Formula close(const Formula& f, const std::string& name) {
  if (f.loose() != 0) throw std::invalid_argument("close: formula is not locally closed");
  return closer(name).formula(f, 0);
}

Term substitute(const Term& t, const std::string& name, const Term& value) {
  return substituter(name, value).term(t, 0);
}

Formula substitute(const Formula& f, const std::string& name, const Term& value) {
  return substituter(name, value).formula(f, 0);
}

void collect_free_vars(const Term& t, std::set<std::string>& out) {
  visit_terms(t, [&out](const Term& s) {
    if (!s.has_free_vars()) return false;
    if (s.kind() == Term::Kind::var) out.insert(s.name());
    return true;
  });
}

void collect_free_vars(const Formula& f, std::set<std::string>& out) {
  visit_terms(f, [&out](const Term& s) {
    if (!s.has_free_vars()) return false;
    if (s.kind() == Term::Kind::var) out.insert(s.name());
    return true;
  });
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect_free_vars(f, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base.empty() ? "x" : base;
  if (!avoid.contains(stem)) return stem;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!avoid.contains(candidate)) return candidate;
  }
}

void visit_terms(const Term& t, const std::function<bool(const Term&)>& fn) {
  if (!fn(t)) return;
  switch (t.kind()) {
    case Term::Kind::succ:
    case Term::Kind::app:
      for (const auto& a : t.args()) visit_terms(a, fn);
      break;
    case Term::Kind::eps:
      visit_terms(t.body(), fn);
      break;
    default:
      break;
  }
}

void visit_terms(const Formula& f, const std::function<bool(const Term&)>& fn) {
  const auto& n = detail::Build::node(f);
  for (const auto& t : n.terms) visit_terms(t, fn);
  for (const auto& s : n.subs) visit_terms(s, fn);
}

namespace {

template <typename Pred>
std::vector<Term> distinct_closed(const Formula& f, Pred keep) {
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  visit_terms(f, [&](const Term& t) {
    if (t.closed() && keep(t) && seen.insert(t).second) out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace

std::vector<Term> closed_subterms(const Formula& f) {
  return distinct_closed(f, [](const Term&) { return true; });
}

std::vector<Term> closed_eps_subterms(const Formula& f) {
  return distinct_closed(f, [](const Term& t) { return t.is_eps(); });
}

std::vector<Term> closed_eps_subterms(const Term& t) {
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  visit_terms(t, [&](const Term& s) {
    if (!s.has_eps()) return false;
    if (s.is_eps() && s.closed() && seen.insert(s).second) out.push_back(s);
    return true;
  });
  return out;
}

Term replace_maximal_eps(const Term& t, const std::function<Term(const Term&)>& fn) {
  Rewriter r;
  r.term_skip = [](const Term& s, std::size_t) { return !s.has_eps(); };
  r.formula_skip = [](const Formula& s, std::size_t) { return !s.has_eps(); };
  r.term_fn = [&fn](const Term& s, std::size_t) -> std::optional<Term> {
    if (s.is_eps() && s.closed()) return fn(s);
    return std::nullopt;
  };
  return r.term(t, 0);
}

Formula replace_maximal_eps(const Formula& f, const std::function<Term(const Term&)>& fn) {
  Rewriter r;
  r.term_skip = [](const Term& s, std::size_t) { return !s.has_eps(); };
  r.formula_skip = [](const Formula& s, std::size_t) { return !s.has_eps(); };
  r.term_fn = [&fn](const Term& s, std::size_t) -> std::optional<Term> {
    if (s.is_eps() && s.closed()) return fn(s);
    return std::nullopt;
  };
  return r.formula(f, 0);
}

std::optional<Term> predecessor(const Term& t) {
  if (t.is_numeral() && t.value() > 0) return make_numeral(t.value() - 1);
  if (t.kind() == Term::Kind::succ) return t.operand();
  return std::nullopt;
}

}  // namespace epsilon
