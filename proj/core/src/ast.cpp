#include "epsilon/ast.hpp"
#include "epsilon/ops.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>

namespace epsilon {

Natural parse_natural(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("empty natural");
  Natural n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal natural: " + std::string(digits));
    n *= 10;
    n += c - '0';
  }
  return n;
}

namespace {

constexpr std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t natural_hash(const Natural& n) {
  if (n == 0) return 0x51ed27;
  std::uint64_t low = static_cast<std::uint64_t>(n & std::numeric_limits<std::uint64_t>::max());
  return mix(std::hash<std::uint64_t>{}(low), boost::multiprecision::msb(n));
}

void absorb(detail::Meta& m, const detail::Meta& child) {
  m.hash = mix(m.hash, child.hash);
  m.loose = std::max(m.loose, child.loose);
  m.free_vars = m.free_vars || child.free_vars;
  m.eps = m.eps || child.eps;
  m.quantifier = m.quantifier || child.quantifier;
}

void absorb_under_binder(detail::Meta& m, const detail::Meta& child) {
  detail::Meta c = child;
  c.loose = c.loose > 0 ? c.loose - 1 : 0;
  absorb(m, c);
}

}  // namespace

namespace detail {

Term Build::term(TermNode node) {
  Meta m;
  m.hash = mix(0x7e57, static_cast<std::size_t>(node.kind));
  switch (node.kind) {
    case Term::Kind::numeral:
      m.hash = mix(m.hash, natural_hash(node.value));
      break;
    case Term::Kind::var:
      m.hash = mix(m.hash, std::hash<std::string>{}(node.name));
      m.free_vars = true;
      break;
    case Term::Kind::bound:
      m.hash = mix(m.hash, node.index);
      m.loose = static_cast<std::uint32_t>(node.index + 1);
      break;
    case Term::Kind::succ:
      absorb(m, node.args[0].node_->meta);
      break;
    case Term::Kind::app:
      m.hash = mix(m.hash, std::hash<std::string>{}(node.name));
      for (const auto& a : node.args) absorb(m, a.node_->meta);
      break;
    case Term::Kind::eps:
      absorb_under_binder(m, node.body->node_->meta);
      m.eps = true;
      break;
  }
  node.meta = m;
  return Term(std::make_shared<const TermNode>(std::move(node)));
}

Formula Build::formula(FormulaNode node) {
  Meta m;
  m.hash = mix(0xf0f0, static_cast<std::size_t>(node.kind));
  for (const auto& t : node.terms) absorb(m, t.node_->meta);
  if (node.kind == Formula::Kind::bounded_forall || node.kind == Formula::Kind::bounded_exists ||
      node.kind == Formula::Kind::forall || node.kind == Formula::Kind::exists) {
    absorb_under_binder(m, node.subs[0].node_->meta);
  } else {
    for (const auto& s : node.subs) absorb(m, s.node_->meta);
  }
  if (node.kind == Formula::Kind::forall || node.kind == Formula::Kind::exists) m.quantifier = true;
  node.meta = m;
  return Formula(std::make_shared<const FormulaNode>(std::move(node)));
}

}  // namespace detail

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::numeral:
      return a.value() == b.value();
    case Term::Kind::var:
      return a.name() == b.name();
    case Term::Kind::bound:
      return a.index() == b.index();
    case Term::Kind::succ:
      return a.operand() == b.operand();
    case Term::Kind::app:
      return a.name() == b.name() && a.args() == b.args();
    case Term::Kind::eps:
      return a.body() == b.body();
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  const auto& na = detail::Build::node(a);
  const auto& nb = detail::Build::node(b);
  return na.terms == nb.terms && na.subs == nb.subs;
}

// ---- constructors -----------------------------------------------------------

using detail::Build;

Term make_numeral(Natural n) {
  if (n < 0) throw std::invalid_argument("numerals are natural numbers");
  return Build::term({.kind = Term::Kind::numeral, .value = std::move(n)});
}

Term make_succ(Term t) {
  if (t.is_numeral()) return make_numeral(t.value() + 1);
  return Build::term({.kind = Term::Kind::succ, .args = {std::move(t)}});
}

Term make_var(std::string name) {
  return Build::term({.kind = Term::Kind::var, .name = std::move(name)});
}

Term make_bound(std::size_t index) {
  return Build::term({.kind = Term::Kind::bound, .index = index});
}

Term make_app(std::string symbol, std::vector<Term> args) {
  return Build::term({.kind = Term::Kind::app, .name = std::move(symbol), .args = std::move(args)});
}

Term make_eps_raw(std::string hint, Formula body) {
  return Build::term({.kind = Term::Kind::eps, .name = std::move(hint), .body = std::move(body)});
}

Term make_eps(const std::string& name, const Formula& body) {
  return make_eps_raw(name, close(body, name));
}

Formula make_eq(Term a, Term b) {
  return Build::formula({.kind = Formula::Kind::eq, .terms = {std::move(a), std::move(b)}});
}

Formula make_not(Formula f) {
  return Build::formula({.kind = Formula::Kind::negation, .subs = {std::move(f)}});
}

Formula make_and(Formula a, Formula b) {
  return Build::formula({.kind = Formula::Kind::conjunction, .subs = {std::move(a), std::move(b)}});
}

Formula make_or(Formula a, Formula b) {
  return Build::formula({.kind = Formula::Kind::disjunction, .subs = {std::move(a), std::move(b)}});
}

Formula make_implies(Formula a, Formula b) {
  return Build::formula({.kind = Formula::Kind::implication, .subs = {std::move(a), std::move(b)}});
}

Formula make_binder_raw(Formula::Kind kind, std::string hint, Formula body, std::optional<Term> bound) {
  detail::FormulaNode node{.kind = kind, .hint = std::move(hint), .subs = {std::move(body)}};
  if (kind == Formula::Kind::bounded_forall || kind == Formula::Kind::bounded_exists) {
    if (!bound) throw std::invalid_argument("bounded quantifier needs a bound");
    node.terms.push_back(std::move(*bound));
  } else if (kind != Formula::Kind::forall && kind != Formula::Kind::exists) {
    throw std::invalid_argument("not a binder kind");
  }
  return Build::formula(std::move(node));
}

Formula make_connective(Formula::Kind kind, std::vector<Formula> subs) {
  switch (kind) {
    case Formula::Kind::negation:
      return make_not(std::move(subs.at(0)));
    case Formula::Kind::conjunction:
      return make_and(std::move(subs.at(0)), std::move(subs.at(1)));
    case Formula::Kind::disjunction:
      return make_or(std::move(subs.at(0)), std::move(subs.at(1)));
    case Formula::Kind::implication:
      return make_implies(std::move(subs.at(0)), std::move(subs.at(1)));
    default:
      throw std::invalid_argument("not a connective kind");
  }
}

Formula make_forall(const std::string& name, const Formula& body) {
  return make_binder_raw(Formula::Kind::forall, name, close(body, name));
}

Formula make_exists(const std::string& name, const Formula& body) {
  return make_binder_raw(Formula::Kind::exists, name, close(body, name));
}

Formula make_bounded_forall(const std::string& name, Term bound, const Formula& body) {
  return make_binder_raw(Formula::Kind::bounded_forall, name, close(body, name), std::move(bound));
}

Formula make_bounded_exists(const std::string& name, Term bound, const Formula& body) {
  return make_binder_raw(Formula::Kind::bounded_exists, name, close(body, name), std::move(bound));
}

}  // namespace epsilon
