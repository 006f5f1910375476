#include "epsilon/epsilonizer.hpp"

#include "epsilon/ops.hpp"
#include "epsilon/printer.hpp"
#include "epsilon/proof.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace epsilon {

namespace detail {
extern const std::string_view axioms_source;
}

namespace {

// Work on locally closed pieces only: every binder is opened with a name no
// user can write, translated, then closed again.
class Translator {
 public:
  Formula formula(const Formula& f) {
    if (!f.has_quantifier()) return f;
    switch (f.kind()) {
      case Formula::Kind::eq:
        return make_eq(term(f.lhs()), term(f.rhs()));
      case Formula::Kind::negation:
        return make_not(formula(f.sub()));
      case Formula::Kind::conjunction:
      case Formula::Kind::disjunction:
      case Formula::Kind::implication:
        return make_connective(f.kind(), {formula(f.left()), formula(f.right())});
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists: {
        std::string v = fresh();
        Formula body = formula(open(f.body(), make_var(v)));
        return make_binder_raw(f.kind(), f.hint(), close(body, v), term(f.bound()));
      }
      case Formula::Kind::forall:
      case Formula::Kind::exists: {
        std::string v = fresh();
        Formula body = formula(open(f.body(), make_var(v)));
        Formula matrix = f.kind() == Formula::Kind::exists ? body : make_not(body);
        Term e = make_eps_raw(f.hint(), close(matrix, v));
        return substitute(body, v, e);
      }
    }
    return f;
  }

  Term term(const Term& t) {
    if (!t.has_quantifier()) return t;
    switch (t.kind()) {
      case Term::Kind::succ:
        return make_succ(term(t.operand()));
      case Term::Kind::app: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(term(a));
        return make_app(t.name(), std::move(args));
      }
      case Term::Kind::eps: {
        std::string v = fresh();
        Formula body = formula(open(t.body(), make_var(v)));
        return make_eps_raw(t.name(), close(body, v));
      }
      default:
        return t;
    }
  }

 private:
  std::string fresh() { return "%t" + std::to_string(counter_++); }
  std::size_t counter_ = 0;
};

std::size_t rank_of(const Term& e, std::unordered_map<Term, std::size_t, TermHash>& cache);

std::size_t rank_of(const Term& e, std::unordered_map<Term, std::size_t, TermHash>& cache) {
  if (auto it = cache.find(e); it != cache.end()) return it->second;
  std::size_t inner = 0;
  visit_terms(e.body(), [&](const Term& s) {
    if (!s.has_eps()) return false;
    if (s.is_eps()) {
      inner = std::max(inner, rank_of(s, cache));
      return false;
    }
    return true;
  });
  cache.emplace(e, inner + 1);
  return inner + 1;
}

// Finds t with open(body, t) == target, walking both in lockstep.
class InstanceMatcher {
 public:
  bool formula(const Formula& pat, const Formula& tgt, std::size_t depth) {
    if (pat.loose() <= depth) return pat == tgt;
    if (pat.kind() != tgt.kind()) return false;
    switch (pat.kind()) {
      case Formula::Kind::eq:
        return term(pat.lhs(), tgt.lhs(), depth) && term(pat.rhs(), tgt.rhs(), depth);
      case Formula::Kind::negation:
        return formula(pat.sub(), tgt.sub(), depth);
      case Formula::Kind::conjunction:
      case Formula::Kind::disjunction:
      case Formula::Kind::implication:
        return formula(pat.left(), tgt.left(), depth) && formula(pat.right(), tgt.right(), depth);
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists:
        return term(pat.bound(), tgt.bound(), depth) && formula(pat.body(), tgt.body(), depth + 1);
      case Formula::Kind::forall:
      case Formula::Kind::exists:
        return formula(pat.body(), tgt.body(), depth + 1);
    }
    return false;
  }

  bool term(const Term& pat, const Term& tgt, std::size_t depth) {
    if (pat.loose() <= depth) return pat == tgt;
    if (pat.kind() == Term::Kind::bound && pat.index() == depth) {
      if (tgt.loose() != 0) return false;
      if (found && *found != tgt) return false;
      found = tgt;
      return true;
    }
    if (pat.kind() == Term::Kind::succ && tgt.is_numeral()) {
      auto p = predecessor(tgt);
      return p && term(pat.operand(), *p, depth);
    }
    if (pat.kind() != tgt.kind()) return false;
    switch (pat.kind()) {
      case Term::Kind::succ:
        return term(pat.operand(), tgt.operand(), depth);
      case Term::Kind::app: {
        if (pat.name() != tgt.name() || pat.args().size() != tgt.args().size()) return false;
        for (std::size_t i = 0; i < pat.args().size(); ++i) {
          if (!term(pat.args()[i], tgt.args()[i], depth)) return false;
        }
        return true;
      }
      case Term::Kind::eps:
        return formula(pat.body(), tgt.body(), depth + 1);
      default:
        return false;
    }
  }

  std::optional<Term> found;
};

}  // namespace

CriticalFormula make_critical(const Term& t, const Term& e) {
  if (!e.is_eps()) throw PreconditionError("critical formula needs an eps term, got " + print(e));
  return {t, e, make_implies(open(e.body(), t), open(e.body(), e))};
}

std::optional<CriticalFormula> as_critical(const Formula& f) {
  if (f.kind() != Formula::Kind::implication) return std::nullopt;
  for (const auto& e : closed_eps_subterms(f.right())) {
    if (open(e.body(), e) != f.right()) continue;
    InstanceMatcher m;
    if (!m.formula(e.body(), f.left(), 0)) continue;
    Term t = m.found ? *m.found : make_zero();
    return make_critical(t, e);
  }
  return std::nullopt;
}

Formula epsilon_translate(const Formula& f) {
  Translator tr;
  return tr.formula(f);
}

std::vector<Formula> rewrite_axioms(std::span<const Formula> axioms) {
  std::vector<Formula> out;
  out.reserve(axioms.size());
  for (const auto& a : axioms) out.push_back(rewrite_axiom(a));
  return out;
}

std::size_t rank(const Term& e) {
  if (!e.is_eps()) throw PreconditionError("rank is defined for eps terms only");
  std::unordered_map<Term, std::size_t, TermHash> cache;
  return rank_of(e, cache);
}

std::vector<CriticalFormula> critical_instances(std::span<const Formula> lines) {
  std::vector<Term> eps_terms;
  std::vector<Term> witnesses;
  std::unordered_set<Term, TermHash> seen_eps;
  std::unordered_set<Term, TermHash> seen_terms;
  for (const auto& line : lines) {
    for (auto& e : closed_eps_subterms(line)) {
      if (seen_eps.insert(e).second) eps_terms.push_back(e);
    }
    for (auto& t : closed_subterms(line)) {
      if (seen_terms.insert(t).second) witnesses.push_back(t);
    }
  }
  std::vector<std::pair<std::string, CriticalFormula>> keyed;
  for (const auto& e : eps_terms) {
    for (const auto& t : witnesses) {
      if (t == e) continue;
      CriticalFormula c = make_critical(t, e);
      keyed.push_back({print(c.formula) + "\x01" + print(t), std::move(c)});
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CriticalFormula> out;
  out.reserve(keyed.size());
  for (auto& [k, c] : keyed) out.push_back(std::move(c));
  return out;
}

std::string_view default_axioms_text() { return detail::axioms_source; }

std::vector<Formula> default_axioms(const Signature& sig) {
  auto parsed = parse_formula_lines(default_axioms_text(), sig);
  return rewrite_axioms(parsed);
}

}  // namespace epsilon
