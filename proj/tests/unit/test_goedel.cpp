#include "epsilon/epsilonizer.hpp"
#include "epsilon/goedel.hpp"
#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <gtest/gtest.h>

using namespace epsilon;

namespace {

const Signature& sig() { return default_prelude(); }
Term T(const char* s) { return parse_term(s, sig()); }
Formula F(const char* s) { return parse_formula(s, sig()); }
const std::vector<Formula>& axioms() {
  static const std::vector<Formula> ax = default_axioms(sig());
  return ax;
}
const Signature& arith() {
  static const Signature a = arithmetize(sig(), axioms());
  return a;
}

TEST(Coding, RoundTrip) {
  EXPECT_EQ(decode_term(encode(T("S(0)"))), T("S(0)"));
  EXPECT_EQ(std::get<Term>(decode(encode(T("S(0)")))), T("S(0)"));
  Formula f = F("all x. ex y. lt(x, y) = 1 and (eps z. z = x) = 0");
  EXPECT_EQ(decode_formula(encode(f)), f);
  EXPECT_EQ(print(decode_formula(encode(f))), print(f));
}

TEST(Coding, Monotone) {
  EXPECT_GT(encode(F("S(S(S(S(S(S(S(0))))))) = 0")), 7);
  Natural big = parse_natural("99999999999999999999999999");
  EXPECT_GT(encode(make_eq(make_numeral(big), make_zero())), big);
  Formula f = F("0 = 0");
  EpsProof p;
  p.lines.push_back({f, Justification::identity()});
  EXPECT_GT(encode(p), encode(f));
  EXPECT_GT(encode(f), encode(T("0")));
}

TEST(Coding, KindsAreDistinct) {
  EXPECT_NE(encode(T("0")), encode(F("0 = 0")));
  EXPECT_THROW(decode_formula(encode(T("0"))), DecodeError);
  EXPECT_THROW(decode_term(encode(F("0 = 0"))), DecodeError);
}

TEST(Coding, GarbageIsRejected) {
  for (unsigned n : {0u, 1u, 2u, 7u, 255u, 256u, 65536u}) EXPECT_THROW(decode(n), DecodeError) << n;
  Code c = encode(F("0 = 0"));
  EXPECT_THROW(decode(c * 256), DecodeError);
  EXPECT_THROW(decode(c + 1), DecodeError);
}

TEST(ProofPredicate, Examples) {
  EpsProof p;
  p.lines.push_back({F("0 = 0"), Justification::identity()});
  EXPECT_TRUE(proof_pred(encode(p), encode(F("0 = 0")), sig(), axioms()));
  EXPECT_FALSE(proof_pred(0, encode(F("0 = 0")), sig(), axioms()));
  EXPECT_FALSE(proof_pred(encode(p), encode(F("S(0) = S(0)")), sig(), axioms()));
  p.lines[0].justification = Justification::recursion();
  EXPECT_FALSE(proof_pred(encode(p), encode(F("0 = 0")), sig(), axioms()));
}

TEST(Pi2, Recognizer) {
  Pi2Match m = pi2_recognizer(encode(F("all x. ex y. lt(x, y) = 1")));
  ASSERT_TRUE(m.ok);
  EXPECT_EQ(print(m.matrix()), "lt(x, y) = S(0)");
  EXPECT_EQ(m.instance(2, 3), F("lt(2, 3) = 1"));
  EXPECT_FALSE(pi2_recognizer(encode(F("0 = 0"))).ok);
  EXPECT_FALSE(pi2_recognizer(encode(F("all x. all y. lt(x, y) = 1"))).ok);
  EXPECT_FALSE(pi2_recognizer(encode(F("all x. ex y. ex z. lt(x, y) = z"))).ok);
  EXPECT_TRUE(pi2_recognizer(encode(F("all x. ex y. ex z < y. lt(x, z) = 1"))).ok);
  EXPECT_FALSE(pi2_recognizer(0).ok);
  EXPECT_FALSE(pi2_recognizer(encode(T("0"))).ok);
}

TEST(Pi2, TheoremOfProof) {
  Formula s = F("all x. ex y. plus(x, y) = x");
  Formula tr = epsilon_translate(s);
  EXPECT_EQ(*untranslate_pi2(tr), s);
  Term d = tr.lhs().args()[1];
  Term c = tr.rhs();
  EpsProof p;
  p.lines.push_back({make_eq(make_app("plus", {c, make_zero()}), c), Justification::recursion()});
  p.lines.push_back({make_critical(make_zero(), d).formula, Justification::critical(make_zero(), d)});
  p.lines.push_back({tr, Justification::taut({0, 1})});
  EXPECT_EQ(pi2_theorem(encode(p), sig(), axioms()), encode(s));
  EXPECT_EQ(pi2_theorem(0, sig(), axioms()), 0);
  EXPECT_FALSE(untranslate_pi2(F("0 = 0")).has_value());
}

TEST(Arithmetize, AddsOpaqueSymbols) {
  for (const char* name : {"prf", "pi2", "pi2thm", "inst"}) {
    const SymbolDef* d = arith().find(name);
    ASSERT_NE(d, nullptr) << name;
    EXPECT_EQ(d->kind, SymbolDef::Kind::opaque);
  }
  Code zero_eq = encode(F("0 = 0"));
  EpsProof p;
  p.lines.push_back({F("0 = 0"), Justification::identity()});
  Formula f = make_eq(make_app("prf", {make_numeral(encode(p)), make_numeral(zero_eq)}), make_numeral(1));
  EXPECT_TRUE(eval_qf(f, arith()));
  Formula g = make_eq(make_app("pi2", {make_numeral(encode(F("all x. ex y. x = y")))}), make_numeral(1));
  EXPECT_TRUE(eval_qf(g, arith()));
  Term inst = make_app("inst", {make_numeral(encode(F("all x. ex y. x = y"))), make_numeral(4), make_numeral(5)});
  EXPECT_EQ(eval_term(inst, arith()), encode(F("4 = 5")));
}

TEST(Star, Shapes) {
  StarFormula star = build_star(arith());
  EXPECT_EQ(star.form, StarFormula::Form::star);
  ASSERT_EQ(star.formula.kind(), Formula::Kind::forall);
  EXPECT_EQ(star.formula.body().kind(), Formula::Kind::forall);
  StarFormula dbl = build_star(arith(), StarFormula::Form::doublestar);
  EXPECT_EQ(dbl.formula.kind(), Formula::Kind::forall);
  StarFormula tri = build_triplestar(arith());
  EXPECT_TRUE(pi2_match(tri.formula).ok);
  EXPECT_TRUE(pi2_recognizer(encode(tri.formula)).ok);
  EXPECT_TRUE(tri.matrix.quantifier_free());
  EXPECT_EQ(free_vars(tri.matrix), (std::set<std::string>{"x", "y"}));
  Formula a0 = substitute(substitute(tri.matrix, "x", make_zero()), "y", make_zero());
  EXPECT_TRUE(eval_qf(a0, arith()));
  EXPECT_EQ(parse_form("doublestar"), StarFormula::Form::doublestar);
  EXPECT_FALSE(parse_form("quadstar").has_value());
  EXPECT_EQ(form_name(StarFormula::Form::triplestar), "triplestar");
}

TEST(Contract, Shape) {
  Formula f = F("all x1. all x2. lt(x1, x2) = 1 or not lt(x1, x2) = 1");
  Formula c = contract_quantifiers(f);
  ASSERT_EQ(c.kind(), Formula::Kind::forall);
  ASSERT_EQ(c.body().kind(), Formula::Kind::bounded_forall);
  ASSERT_EQ(c.body().body().kind(), Formula::Kind::bounded_forall);
  EXPECT_EQ(c.body().bound(), make_bound(0));
  EXPECT_EQ(c.body().body().bound(), make_bound(1));
  EXPECT_THROW(contract_quantifiers(F("all x. x = x")), PreconditionError);
  EXPECT_THROW(contract_quantifiers(F("0 = 0")), PreconditionError);
  StarFormula star = build_star(arith());
  EXPECT_EQ(contract_quantifiers(star.formula).kind(), Formula::Kind::forall);
}

TEST(Instances, SmallRange) {
  StarFormula tri = build_triplestar(arith());
  auto rows = check_instances(tri, 0, sig(), arith(), axioms());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(*rows[0].y, 0);
  EXPECT_FALSE(rows[0].anomaly);
  rows = check_instances(tri, 5, sig(), arith(), axioms());
  ASSERT_EQ(rows.size(), 6u);
  std::string report = report_text(rows);
  EXPECT_EQ(report.substr(0, report.find('\n')), "0\t0\t0\tleast y; instance proved in 51 lines");
  EXPECT_THROW(check_instances(build_star(arith()), 1, sig(), arith(), axioms()), PreconditionError);
}

}  // namespace
