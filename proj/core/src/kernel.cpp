#include "epsilon/kernel.hpp"

#include "epsilon/epsilonizer.hpp"
#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <unordered_map>

namespace epsilon {

// ---- propositional consequence ----------------------------------------------

namespace {

bool is_atom(const Formula& f) { return !f.is_connective(); }

class TruthTable {
 public:
  TruthTable(std::size_t cap) : cap_(cap) {}

  void collect(const Formula& f) {
    if (is_atom(f)) {
      if (!atoms_.contains(f)) {
        if (atoms_.size() == cap_) throw AtomCapExceeded("more than " + std::to_string(cap_) + " propositional atoms");
        atoms_.emplace(f, atoms_.size());
      }
      return;
    }
    for (std::size_t i = 0; i < (f.kind() == Formula::Kind::negation ? 1u : 2u); ++i) collect(f.sub(i));
  }

  void finalize() {
    rows_ = std::size_t{1} << atoms_.size();
    words_ = (rows_ + 63) / 64;
    tail_ = rows_ % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows_) - 1;
  }

  // Bit r of the result is the value under valuation r (atom i true iff bit i of r).
  std::vector<std::uint64_t> column(const Formula& f) const {
    std::vector<std::uint64_t> out(words_);
    if (is_atom(f)) {
      std::size_t i = atoms_.at(f);
      for (std::size_t w = 0; w < words_; ++w) {
        if (i < 6) {
          static constexpr std::uint64_t masks[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                                     0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
          out[w] = masks[i];
        } else {
          out[w] = ((w >> (i - 6)) & 1) ? ~std::uint64_t{0} : 0;
        }
      }
      return out;
    }
    if (f.kind() == Formula::Kind::negation) {
      out = column(f.sub());
      for (auto& x : out) x = ~x;
      return out;
    }
    auto l = column(f.left());
    auto r = column(f.right());
    for (std::size_t w = 0; w < words_; ++w) {
      switch (f.kind()) {
        case Formula::Kind::conjunction:
          out[w] = l[w] & r[w];
          break;
        case Formula::Kind::disjunction:
          out[w] = l[w] | r[w];
          break;
        default:
          out[w] = ~l[w] | r[w];
          break;
      }
    }
    return out;
  }

  std::size_t words() const { return words_; }
  std::uint64_t tail() const { return tail_; }

 private:
  std::size_t cap_;
  std::unordered_map<Formula, std::size_t, FormulaHash> atoms_;
  std::size_t rows_ = 1;
  std::size_t words_ = 1;
  std::uint64_t tail_ = 1;
};

}  // namespace

bool is_taut_consequence(std::span<const Formula> premises, const Formula& conclusion, std::size_t atom_cap) {
  TruthTable table(atom_cap);
  for (const auto& p : premises) table.collect(p);
  table.collect(conclusion);
  table.finalize();
  std::vector<std::uint64_t> acc(table.words(), ~std::uint64_t{0});
  for (const auto& p : premises) {
    auto col = table.column(p);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= col[w];
  }
  auto c = table.column(conclusion);
  for (std::size_t w = 0; w < acc.size(); ++w) {
    std::uint64_t bad = acc[w] & ~c[w];
    if (w + 1 == acc.size()) bad &= table.tail();
    if (bad) return false;
  }
  return true;
}

// ---- axiom shapes -----------------------------------------------------------

namespace {

// b is a + 1, with numerals read as iterated successors.
bool is_successor_of(const Term& b, const Term& a) {
  auto p = predecessor(b);
  return p && *p == a;
}

// r arises from l by replacing some occurrences of t with s.
bool replaces(const Term& l, const Term& r, const Term& t, const Term& s) {
  if (l == r) return true;
  if (l == t && r == s) return true;
  if (l.is_numeral() && r.is_numeral()) {
    if (!t.is_numeral() || !s.is_numeral()) return false;
    return l.value() >= t.value() && r.value() >= s.value() && l.value() - t.value() == r.value() - s.value();
  }
  const bool lsucc = l.kind() == Term::Kind::succ || (l.is_numeral() && l.value() > 0);
  const bool rsucc = r.kind() == Term::Kind::succ || (r.is_numeral() && r.value() > 0);
  if (lsucc && rsucc) return replaces(*predecessor(l), *predecessor(r), t, s);
  if (l.kind() != r.kind()) return false;
  if (l.kind() == Term::Kind::app) {
    if (l.name() != r.name() || l.args().size() != r.args().size()) return false;
    for (std::size_t i = 0; i < l.args().size(); ++i) {
      if (!replaces(l.args()[i], r.args()[i], t, s)) return false;
    }
    return true;
  }
  return false;
}

bool replaces(const Formula& a, const Formula& b, const Term& t, const Term& s) {
  if (a == b) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::eq:
      return replaces(a.lhs(), b.lhs(), t, s) && replaces(a.rhs(), b.rhs(), t, s);
    case Formula::Kind::negation:
      return replaces(a.sub(), b.sub(), t, s);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
    case Formula::Kind::implication:
      return replaces(a.left(), b.left(), t, s) && replaces(a.right(), b.right(), t, s);
    case Formula::Kind::bounded_forall:
    case Formula::Kind::bounded_exists:
      return replaces(a.bound(), b.bound(), t, s) && replaces(a.body(), b.body(), t, s);
    default:
      return false;
  }
}

bool same_body(const Formula& a, const Formula& b) { return a.kind() == b.kind() && a.body() == b.body(); }

Formula with_bound(const Formula& q, Term bound) { return make_binder_raw(q.kind(), q.hint(), q.body(), std::move(bound)); }

// (Q x < b'. A) -> (Q x < b. A) op A(b), or its converse.
bool is_bounded_step(const Formula& f) {
  if (f.kind() != Formula::Kind::implication) return false;
  auto check = [](const Formula& big, const Formula& split) {
    if (!big.is_bounded()) return false;
    const auto op = big.kind() == Formula::Kind::bounded_forall ? Formula::Kind::conjunction : Formula::Kind::disjunction;
    if (split.kind() != op) return false;
    const Formula& small = split.left();
    if (!same_body(big, small) || !is_successor_of(big.bound(), small.bound())) return false;
    return split.right() == open(small.body(), small.bound());
  };
  return check(f.left(), f.right()) || check(f.right(), f.left());
}

bool is_bounded_base(const Formula& f) {
  auto zero_bound = [](const Formula& q) { return q.bound().is_numeral() && q.bound().value() == 0; };
  if (f.kind() == Formula::Kind::bounded_forall) return zero_bound(f);
  if (f.kind() == Formula::Kind::negation && f.sub().kind() == Formula::Kind::bounded_exists) return zero_bound(f.sub());
  return false;
}

}  // namespace

bool is_recursion_instance(const Formula& f, const Signature& sig, std::uint64_t budget) {
  if (is_bounded_base(f) || is_bounded_step(f)) return true;
  if (f.kind() != Formula::Kind::eq) return false;
  auto one_way = [&](const Term& app, const Term& other) {
    if (app.kind() != Term::Kind::app) return false;
    if (auto u = unfold_once(sig, app)) return *u == other;
    const SymbolDef* def = sig.find(app.name());
    if (!def || def->kind != SymbolDef::Kind::opaque || !def->native || !other.is_numeral()) return false;
    std::vector<Natural> args;
    for (const auto& a : app.args()) {
      if (!a.is_numeral()) return false;
      args.push_back(a.value());
    }
    Evaluator ev(sig, nullptr, budget);
    return ev.apply(*def, std::move(args)) == other.value();
  };
  return one_way(f.lhs(), f.rhs()) || one_way(f.rhs(), f.lhs());
}

bool is_identity_instance(const Formula& f) {
  if (f.kind() == Formula::Kind::eq) return f.lhs() == f.rhs();
  if (f.kind() != Formula::Kind::implication || f.left().kind() != Formula::Kind::eq) return false;
  const Term& t = f.left().lhs();
  const Term& s = f.left().rhs();
  const Formula& rest = f.right();
  if (rest.kind() == Formula::Kind::eq) return replaces(rest.lhs(), rest.rhs(), t, s);
  if (rest.kind() == Formula::Kind::implication && is_atom(rest.left()) && is_atom(rest.right())) {
    return replaces(rest.left(), rest.right(), t, s);
  }
  return false;
}

// ---- proof checking -----------------------------------------------------------

std::string_view reason_code(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::forward_reference: return "forward-reference";
    case RejectReason::not_closed: return "not-closed";
    case RejectReason::not_qf: return "not-qf";
    case RejectReason::bad_recursion: return "bad-recursion";
    case RejectReason::bad_identity: return "bad-identity";
    case RejectReason::bad_critical: return "bad-critical";
    case RejectReason::bad_axiom_index: return "bad-axiom-index";
    case RejectReason::axiom_mismatch: return "axiom-mismatch";
    case RejectReason::not_tautological: return "not-tautological";
    case RejectReason::atom_cap: return "atom-cap";
  }
  return "unknown";
}

std::string Verdict::to_text() const {
  if (accepted) return "accepted";
  std::string out = "rejected " + std::to_string(line) + " " + std::string(reason_code(reason));
  if (!detail.empty()) out += ": " + detail;
  return out;
}

Verdict check_eps_proof(const EpsProof& p, const Signature& sig, std::span<const Formula> axioms, std::uint64_t budget) {
  auto reject = [](std::size_t i, RejectReason r, std::string detail) { return Verdict{false, i, r, std::move(detail)}; };
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const Formula& f = p.lines[i].formula;
    const Justification& j = p.lines[i].justification;
    if (!f.closed()) return reject(i, RejectReason::not_closed, "formula has free variables");
    if (!f.quantifier_free()) return reject(i, RejectReason::not_qf, "formula contains an unbounded quantifier");
    switch (j.kind) {
      case Justification::Kind::recursion: {
        bool ok = false;
        try {
          ok = is_recursion_instance(f, sig, budget);
        } catch (const Error&) {
          ok = false;
        }
        if (!ok) return reject(i, RejectReason::bad_recursion, "not an instance of a defining equation");
        break;
      }
      case Justification::Kind::identity:
        if (!is_identity_instance(f)) return reject(i, RejectReason::bad_identity, "not an identity axiom");
        break;
      case Justification::Kind::critical: {
        if (!j.witness || !j.eps || !j.eps->is_eps() || !j.eps->closed() || !j.witness->closed()) {
          return reject(i, RejectReason::bad_critical, "critical axiom needs a closed term and a closed eps term");
        }
        if (make_critical(*j.witness, *j.eps).formula != f) {
          return reject(i, RejectReason::bad_critical, "formula is not A(t) -> A(e) for the given t and e");
        }
        break;
      }
      case Justification::Kind::axiom:
        if (j.axiom >= axioms.size()) {
          return reject(i, RejectReason::bad_axiom_index, "no axiom " + std::to_string(j.axiom));
        }
        if (axioms[j.axiom] != f) return reject(i, RejectReason::axiom_mismatch, "formula differs from axiom " + std::to_string(j.axiom));
        break;
      case Justification::Kind::taut: {
        std::vector<Formula> premises;
        for (std::size_t k : j.premises) {
          if (k >= i) return reject(i, RejectReason::forward_reference, "cites line " + std::to_string(k));
          premises.push_back(p.lines[k].formula);
        }
        try {
          if (!is_taut_consequence(premises, f)) {
            return reject(i, RejectReason::not_tautological, "not a propositional consequence of the cited lines");
          }
        } catch (const AtomCapExceeded& e) {
          return reject(i, RejectReason::atom_cap, e.what());
        }
        break;
      }
    }
  }
  return Verdict{};
}

// ---- proof generation ---------------------------------------------------------

namespace {

Term replace_all(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  switch (t.kind()) {
    case Term::Kind::succ:
      return make_succ(replace_all(t.operand(), from, to));
    case Term::Kind::app: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(replace_all(a, from, to));
      return make_app(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

// Leftmost application whose arguments are all numerals.
std::optional<Term> innermost_redex(const Term& t) {
  if (t.kind() == Term::Kind::succ) return innermost_redex(t.operand());
  if (t.kind() != Term::Kind::app) return std::nullopt;
  for (const auto& a : t.args()) {
    if (!a.is_numeral()) return innermost_redex(a);
  }
  return t;
}

class Prover {
 public:
  Prover(const Signature& sig, std::span<const Formula> axioms, const ProveOptions& options)
      : sig_(sig), axioms_(axioms), options_(options), ev_(sig, &empty_, options.eval_budget) {}

  EpsProof run(const Formula& f) {
    auto [line, truth] = prove(f);
    if (!truth) throw NotTrue("formula is false: " + print(f));
    if (line + 1 != proof_.lines.size()) push(f, Justification::taut({line}));
    return std::move(proof_);
  }

 private:
  std::size_t push(const Formula& f, Justification j) {
    if (proof_.lines.size() >= options_.max_lines) {
      throw BudgetExceeded("proof would exceed " + std::to_string(options_.max_lines) + " lines");
    }
    proof_.lines.push_back({f, std::move(j)});
    return proof_.lines.size() - 1;
  }

  std::size_t add(const Formula& f, Justification j) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    std::size_t i = push(f, std::move(j));
    index_.emplace(f, i);
    return i;
  }

  std::size_t taut(const Formula& f, std::vector<std::size_t> premises) { return add(f, Justification::taut(std::move(premises))); }

  Term numeral_of(const Term& t) { return make_numeral(ev_.term(t)); }

  // Proves u = n where n is the value of u, one innermost unfolding at a time.
  std::size_t reduce(const Term& u) {
    if (auto it = reduced_.find(u); it != reduced_.end()) return it->second;
    Term cur = u;
    std::size_t line = add(make_eq(u, u), Justification::identity());
    while (auto redex = innermost_redex(cur)) {
      const Term& r = *redex;
      Term r2 = [&] {
        if (auto unfolded = unfold_once(sig_, r)) return *unfolded;
        return numeral_of(r);
      }();
      std::size_t eq_line = add(make_eq(r, r2), Justification::recursion());
      Term next = replace_all(cur, r, r2);
      std::size_t leib = add(make_implies(make_eq(r, r2), make_implies(make_eq(u, cur), make_eq(u, next))),
                             Justification::identity());
      line = taut(make_eq(u, next), {eq_line, leib, line});
      cur = next;
    }
    if (!cur.is_numeral()) throw PreconditionError("cannot reduce " + print(u) + " to a numeral");
    reduced_.emplace(u, line);
    return line;
  }

  // From a line proving a = b, a line proving b = a.
  std::size_t flip(std::size_t line, const Term& a, const Term& b) {
    std::size_t refl = add(make_eq(a, a), Justification::identity());
    std::size_t leib = add(make_implies(make_eq(a, b), make_implies(make_eq(a, a), make_eq(b, a))), Justification::identity());
    return taut(make_eq(b, a), {line, refl, leib});
  }

  std::size_t prove_equal(const Term& l, const Term& r) {
    Term n = numeral_of(l);
    std::size_t left = reduce(l);
    if (r == n) return left;
    std::size_t right = flip(reduce(r), r, n);
    if (l == n) return right;
    std::size_t leib = add(make_implies(make_eq(n, r), make_implies(make_eq(l, n), make_eq(l, r))), Justification::identity());
    return taut(make_eq(l, r), {right, left, leib});
  }

  std::size_t zero_ne_one_axiom() {
    Formula target = make_not(make_eq(make_zero(), make_numeral(1)));
    for (std::size_t k = 0; k < axioms_.size(); ++k) {
      if (axioms_[k] == target) return add(target, Justification::axiom_ref(k));
    }
    throw PreconditionError("refuting a false equation needs the axiom 'not 0 = S(0)'");
  }

  std::size_t refute_equal(const Term& l, const Term& r) {
    const SymbolDef* eq = sig_.find("eq");
    if (!eq || eq->arity != 2) throw PreconditionError("refuting a false equation needs eq/2 in the signature");
    Term e_lr = make_app("eq", {l, r});
    Term e_ll = make_app("eq", {l, l});
    const Term zero = make_zero();
    const Term one = make_numeral(1);
    if (ev_.term(e_lr) != 0 || ev_.term(e_ll) != 1) throw PreconditionError("eq/2 is not the characteristic function of equality");
    std::size_t a = reduce(e_lr);
    std::size_t b = reduce(e_ll);
    std::size_t l1 = add(make_implies(make_eq(l, r), make_implies(make_eq(e_ll, one), make_eq(e_lr, one))), Justification::identity());
    std::size_t l2 = add(make_implies(make_eq(e_lr, zero), make_implies(make_eq(e_lr, one), make_eq(zero, one))), Justification::identity());
    std::size_t ax = zero_ne_one_axiom();
    return taut(make_not(make_eq(l, r)), {a, b, l1, l2, ax});
  }

  // Line proving f when the result is true, not f otherwise.
  std::pair<std::size_t, bool> prove(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::eq: {
        if (ev_.formula(f)) return {prove_equal(f.lhs(), f.rhs()), true};
        return {refute_equal(f.lhs(), f.rhs()), false};
      }
      case Formula::Kind::negation: {
        auto [line, truth] = prove(f.sub());
        if (truth) return {taut(make_not(f), {line}), false};
        return {line, true};
      }
      case Formula::Kind::conjunction: {
        auto [l, lt] = prove(f.left());
        if (!lt) return {taut(make_not(f), {l}), false};
        auto [r, rt] = prove(f.right());
        return rt ? std::pair{taut(f, {l, r}), true} : std::pair{taut(make_not(f), {r}), false};
      }
      case Formula::Kind::disjunction: {
        auto [l, lt] = prove(f.left());
        if (lt) return {taut(f, {l}), true};
        auto [r, rt] = prove(f.right());
        return rt ? std::pair{taut(f, {r}), true} : std::pair{taut(make_not(f), {l, r}), false};
      }
      case Formula::Kind::implication: {
        auto [l, lt] = prove(f.left());
        if (!lt) return {taut(f, {l}), true};
        auto [r, rt] = prove(f.right());
        return rt ? std::pair{taut(f, {r}), true} : std::pair{taut(make_not(f), {l, r}), false};
      }
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists:
        return prove_bounded(f);
      default:
        throw PreconditionError("cannot prove quantified formula " + print(f));
    }
  }

  std::pair<std::size_t, bool> prove_bounded(const Formula& f) {
    Term n = numeral_of(f.bound());
    Formula qn = with_bound(f, n);
    auto [line, truth] = prove_numeral_bound(qn);
    if (f.bound() == n) return {line, truth};
    if (truth) {
      std::size_t eq = prove_equal(n, f.bound());
      std::size_t leib = add(make_implies(make_eq(n, f.bound()), make_implies(qn, f)), Justification::identity());
      return {taut(f, {line, eq, leib}), true};
    }
    std::size_t eq = prove_equal(f.bound(), n);
    std::size_t leib = add(make_implies(make_eq(f.bound(), n), make_implies(f, qn)), Justification::identity());
    return {taut(make_not(f), {line, eq, leib}), false};
  }

  std::pair<std::size_t, bool> prove_numeral_bound(const Formula& q) {
    const Natural limit = q.bound().value();
    const bool universal = q.kind() == Formula::Kind::bounded_forall;
    auto at = [&](const Natural& k) { return with_bound(q, make_numeral(k)); };
    auto inst = [&](const Natural& k) { return open(q.body(), make_numeral(k)); };

    // The first k < limit where the body's value differs from the quantifier's neutral value.
    std::optional<Natural> decisive;
    for (Natural k = 0; k < limit; ++k) {
      if (ev_.formula(inst(k)) != universal) {
        decisive = k;
        break;
      }
    }
    if (universal && !decisive) {
      std::size_t cur = add(at(0), Justification::recursion());
      for (Natural k = 0; k < limit; ++k) {
        auto [ak, ok] = prove(inst(k));
        Formula step = make_implies(make_and(at(k), inst(k)), at(k + 1));
        std::size_t s = add(step, Justification::recursion());
        cur = taut(at(k + 1), {cur, ak, s});
      }
      return {cur, true};
    }
    if (!universal && !decisive) {
      std::size_t cur = add(make_not(at(0)), Justification::recursion());
      for (Natural k = 0; k < limit; ++k) {
        auto [nk, ok] = prove(inst(k));
        Formula step = make_implies(at(k + 1), make_or(at(k), inst(k)));
        std::size_t s = add(step, Justification::recursion());
        cur = taut(make_not(at(k + 1)), {cur, nk, s});
      }
      return {cur, false};
    }
    // A counterexample (all) or a witness (ex) at k settles the bound k+1,
    // and the remaining bounds follow one step at a time.
    const Natural k0 = *decisive;
    auto [dk, ok] = prove(inst(k0));
    std::size_t cur;
    if (universal) {
      Formula step = make_implies(at(k0 + 1), make_and(at(k0), inst(k0)));
      cur = taut(make_not(at(k0 + 1)), {dk, add(step, Justification::recursion())});
    } else {
      Formula step = make_implies(make_or(at(k0), inst(k0)), at(k0 + 1));
      cur = taut(at(k0 + 1), {dk, add(step, Justification::recursion())});
    }
    for (Natural k = k0 + 1; k < limit; ++k) {
      if (universal) {
        Formula step = make_implies(at(k + 1), make_and(at(k), inst(k)));
        cur = taut(make_not(at(k + 1)), {cur, add(step, Justification::recursion())});
      } else {
        Formula step = make_implies(make_or(at(k), inst(k)), at(k + 1));
        cur = taut(at(k + 1), {cur, add(step, Justification::recursion())});
      }
    }
    return {cur, !universal};
  }

  const Signature& sig_;
  std::span<const Formula> axioms_;
  ProveOptions options_;
  Assignment empty_;
  Evaluator ev_;
  EpsProof proof_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::unordered_map<Term, std::size_t, TermHash> reduced_;
};

}  // namespace

EpsProof prove_true_pr_sentence(const Formula& f, const Signature& sig, std::span<const Formula> axioms,
                                const ProveOptions& options) {
  if (!f.closed()) throw PreconditionError("formula must be closed: " + print(f));
  if (f.has_eps()) throw PreconditionError("formula must be eps-free: " + print(f));
  if (f.has_quantifier()) throw PreconditionError("formula must be quantifier-free: " + print(f));
  Prover prover(sig, axioms, options);
  return prover.run(f);
}

}  // namespace epsilon
