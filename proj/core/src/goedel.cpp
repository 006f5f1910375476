#include "epsilon/goedel.hpp"

#include "epsilon/epsilonizer.hpp"
#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <set>

namespace epsilon {

namespace {

enum Kind : std::uint8_t { kTerm = 1, kFormula = 2, kProof = 3 };
enum TermTag : std::uint8_t { tNum = 1, tSucc, tVar, tBound, tApp, tEps };
enum FormulaTag : std::uint8_t { fEq = 1, fNot, fAnd, fOr, fImp, fBall, fBex, fAll, fEx };
enum JustTag : std::uint8_t { jRec = 1, jId, jCrit, jAx, jTaut };

class Writer {
 public:
  void byte(std::uint8_t b) { out.push_back(b); }
  void varint(std::uint64_t v) {
    do {
      std::uint8_t b = v & 0x7f;
      v >>= 7;
      byte(v ? (b | 0x80) : b);
    } while (v);
  }
  void nat(const Natural& n) {
    std::vector<std::uint8_t> bytes;
    if (n != 0) boost::multiprecision::export_bits(n, std::back_inserter(bytes), 8);
    varint(bytes.size());
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  void str(const std::string& s) {
    varint(s.size());
    out.insert(out.end(), s.begin(), s.end());
  }

  void term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::numeral:
        byte(tNum);
        nat(t.value());
        break;
      case Term::Kind::succ:
        byte(tSucc);
        term(t.operand());
        break;
      case Term::Kind::var:
        byte(tVar);
        str(t.name());
        break;
      case Term::Kind::bound:
        byte(tBound);
        varint(t.index());
        break;
      case Term::Kind::app:
        byte(tApp);
        str(t.name());
        varint(t.args().size());
        for (const auto& a : t.args()) term(a);
        break;
      case Term::Kind::eps:
        byte(tEps);
        str(t.name());
        formula(t.body());
        break;
    }
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::eq:
        byte(fEq);
        term(f.lhs());
        term(f.rhs());
        break;
      case Formula::Kind::negation:
        byte(fNot);
        formula(f.sub());
        break;
      case Formula::Kind::conjunction:
      case Formula::Kind::disjunction:
      case Formula::Kind::implication:
        byte(f.kind() == Formula::Kind::conjunction ? fAnd : f.kind() == Formula::Kind::disjunction ? fOr : fImp);
        formula(f.left());
        formula(f.right());
        break;
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists:
        byte(f.kind() == Formula::Kind::bounded_forall ? fBall : fBex);
        str(f.hint());
        term(f.bound());
        formula(f.body());
        break;
      case Formula::Kind::forall:
      case Formula::Kind::exists:
        byte(f.kind() == Formula::Kind::forall ? fAll : fEx);
        str(f.hint());
        formula(f.body());
        break;
    }
  }

  void proof(const EpsProof& p) {
    varint(p.lines.size());
    for (const auto& line : p.lines) {
      formula(line.formula);
      const auto& j = line.justification;
      switch (j.kind) {
        case Justification::Kind::recursion:
          byte(jRec);
          break;
        case Justification::Kind::identity:
          byte(jId);
          break;
        case Justification::Kind::critical:
          byte(jCrit);
          term(*j.witness);
          term(*j.eps);
          break;
        case Justification::Kind::axiom:
          byte(jAx);
          varint(j.axiom);
          break;
        case Justification::Kind::taut:
          byte(jTaut);
          varint(j.premises.size());
          for (auto k : j.premises) varint(k);
          break;
      }
    }
  }

  Code finish(std::uint8_t kind) const {
    std::vector<std::uint8_t> all{0x01, kind};
    all.insert(all.end(), out.begin(), out.end());
    Code c;
    boost::multiprecision::import_bits(c, all.begin(), all.end(), 8);
    return c;
  }

  std::vector<std::uint8_t> out;
};

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& bytes, std::size_t pos) : in_(bytes), pos_(pos) {}

  std::uint8_t byte() {
    if (pos_ >= in_.size()) fail("truncated code");
    return in_[pos_++];
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0;; shift += 7) {
      if (shift > 63) fail("varint too long");
      std::uint8_t b = byte();
      if (shift == 63 && (b & 0x7e)) fail("varint overflow");
      v |= std::uint64_t(b & 0x7f) << shift;
      if (!(b & 0x80)) {
        if (b == 0 && shift > 0) fail("non-minimal varint");
        return v;
      }
    }
  }
  std::size_t length() {
    std::uint64_t n = varint();
    if (n > in_.size() - pos_) fail("length exceeds code");
    return static_cast<std::size_t>(n);
  }
  Natural nat() {
    std::size_t n = length();
    if (n > 0 && in_[pos_] == 0) fail("numeral with leading zero byte");
    Natural v = 0;
    if (n) boost::multiprecision::import_bits(v, in_.begin() + pos_, in_.begin() + pos_ + n, 8);
    pos_ += n;
    return v;
  }
  std::string str() {
    std::size_t n = length();
    std::string s(in_.begin() + pos_, in_.begin() + pos_ + n);
    pos_ += n;
    return s;
  }
  std::string name() {
    std::string s = str();
    if (!is_identifier(s)) fail("invalid name in code");
    return s;
  }

  Term term(std::size_t depth) {
    switch (byte()) {
      case tNum:
        return make_numeral(nat());
      case tSucc: {
        Term inner = term(depth);
        if (inner.is_numeral()) fail("successor of a numeral is not canonical");
        return make_succ(std::move(inner));
      }
      case tVar:
        return make_var(name());
      case tBound: {
        std::uint64_t i = varint();
        if (i >= depth) fail("bound variable out of range");
        return make_bound(i);
      }
      case tApp: {
        std::string n = name();
        std::uint64_t argc = varint();
        if (argc == 0 || argc > in_.size() - pos_) fail("bad argument count");
        std::vector<Term> args;
        for (std::uint64_t i = 0; i < argc; ++i) args.push_back(term(depth));
        return make_app(std::move(n), std::move(args));
      }
      case tEps: {
        std::string hint = name();
        Formula body = formula(depth + 1);
        return make_eps_raw(std::move(hint), std::move(body));
      }
      default:
        fail("unknown term tag");
    }
  }

  Formula formula(std::size_t depth) {
    std::uint8_t tag = byte();
    switch (tag) {
      case fEq: {
        Term a = term(depth);
        Term b = term(depth);
        return make_eq(std::move(a), std::move(b));
      }
      case fNot:
        return make_not(formula(depth));
      case fAnd:
      case fOr:
      case fImp: {
        Formula a = formula(depth);
        Formula b = formula(depth);
        auto k = tag == fAnd ? Formula::Kind::conjunction : tag == fOr ? Formula::Kind::disjunction : Formula::Kind::implication;
        return make_connective(k, {std::move(a), std::move(b)});
      }
      case fBall:
      case fBex: {
        std::string hint = name();
        Term bound = term(depth);
        Formula body = formula(depth + 1);
        return make_binder_raw(tag == fBall ? Formula::Kind::bounded_forall : Formula::Kind::bounded_exists, std::move(hint),
                               std::move(body), std::move(bound));
      }
      case fAll:
      case fEx: {
        std::string hint = name();
        Formula body = formula(depth + 1);
        return make_binder_raw(tag == fAll ? Formula::Kind::forall : Formula::Kind::exists, std::move(hint), std::move(body));
      }
      default:
        fail("unknown formula tag");
    }
  }

  EpsProof proof() {
    std::size_t n = length();
    EpsProof p;
    for (std::size_t i = 0; i < n; ++i) {
      Formula f = formula(0);
      Justification j;
      switch (byte()) {
        case jRec:
          j = Justification::recursion();
          break;
        case jId:
          j = Justification::identity();
          break;
        case jCrit: {
          Term t = term(0);
          Term e = term(0);
          j = Justification::critical(std::move(t), std::move(e));
          break;
        }
        case jAx:
          j = Justification::axiom_ref(varint());
          break;
        case jTaut: {
          std::size_t k = length();
          std::vector<std::size_t> premises;
          for (std::size_t m = 0; m < k; ++m) premises.push_back(varint());
          j = Justification::taut(std::move(premises));
          break;
        }
        default:
          fail("unknown justification tag");
      }
      p.lines.push_back({std::move(f), std::move(j)});
    }
    return p;
  }

  void finish() const {
    if (pos_ != in_.size()) fail("trailing bytes after object");
  }

 private:
  [[noreturn]] static void fail(const std::string& msg) { throw DecodeError(msg); }
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_;
};

std::vector<std::uint8_t> bytes_of(const Code& c) {
  if (c <= 0) throw DecodeError("not a code: " + c.str());
  std::vector<std::uint8_t> bytes;
  boost::multiprecision::export_bits(c, std::back_inserter(bytes), 8);
  if (bytes.size() < 2 || bytes[0] != 0x01) throw DecodeError("not a code: missing marker");
  return bytes;
}

}  // namespace

Code encode(const Term& t) {
  Writer w;
  w.term(t);
  return w.finish(kTerm);
}

Code encode(const Formula& f) {
  Writer w;
  w.formula(f);
  return w.finish(kFormula);
}

Code encode(const EpsProof& p) {
  Writer w;
  w.proof(p);
  return w.finish(kProof);
}

Decoded decode(const Code& c) {
  auto bytes = bytes_of(c);
  Reader r(bytes, 2);
  switch (bytes[1]) {
    case kTerm: {
      Term t = r.term(0);
      r.finish();
      return t;
    }
    case kFormula: {
      Formula f = r.formula(0);
      r.finish();
      return f;
    }
    case kProof: {
      EpsProof p = r.proof();
      r.finish();
      return p;
    }
    default:
      throw DecodeError("unknown object kind in code");
  }
}

Term decode_term(const Code& c) {
  auto d = decode(c);
  if (auto* t = std::get_if<Term>(&d)) return *t;
  throw DecodeError("code is not a term");
}

Formula decode_formula(const Code& c) {
  auto d = decode(c);
  if (auto* f = std::get_if<Formula>(&d)) return *f;
  throw DecodeError("code is not a formula");
}

EpsProof decode_proof(const Code& c) {
  auto d = decode(c);
  if (auto* p = std::get_if<EpsProof>(&d)) return std::move(*p);
  throw DecodeError("code is not a proof");
}

bool proof_pred(const Code& p, const Code& f, const Signature& sig, std::span<const Formula> axioms) {
  try {
    EpsProof proof = decode_proof(p);
    if (proof.empty()) return false;
    Formula target = decode_formula(f);
    if (proof.conclusion() != target) return false;
    return check_eps_proof(proof, sig, axioms).accepted;
  } catch (const Error&) {
    return false;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

// ---- Pi-2 sentences ---------------------------------------------------------

Formula Pi2Match::instance(const Natural& m, const Natural& n) const {
  if (!ok) throw PreconditionError("not a Pi-2 sentence");
  const Formula& a = sentence->body().body();
  std::vector<Term> values{make_numeral(n), make_numeral(m)};
  return instantiate(a, values);
}

Formula Pi2Match::matrix() const {
  if (!ok) throw PreconditionError("not a Pi-2 sentence");
  std::string x = is_identifier(sentence->hint()) ? sentence->hint() : "x";
  std::string y = is_identifier(sentence->body().hint()) ? sentence->body().hint() : "y";
  if (y == x) y = fresh_name(y, {x});
  std::vector<Term> values{make_var(y), make_var(x)};
  return instantiate(sentence->body().body(), values);
}

Pi2Match pi2_match(const Formula& f) {
  if (f.kind() != Formula::Kind::forall || !f.closed()) return {};
  const Formula& inner = f.body();
  if (inner.kind() != Formula::Kind::exists) return {};
  const Formula& a = inner.body();
  if (a.has_quantifier() || a.has_eps()) return {};
  return {true, f};
}

Pi2Match pi2_recognizer(const Code& c) {
  try {
    return pi2_match(decode_formula(c));
  } catch (const DecodeError&) {
    return {};
  }
}

std::optional<Formula> untranslate_pi2(const Formula& conclusion) {
  for (const auto& d : closed_eps_subterms(conclusion)) {
    if (d.body().kind() != Formula::Kind::negation) continue;
    const Formula& b = d.body().sub();
    if (open(b, d) != conclusion) continue;
    std::vector<Term> candidates;
    visit_terms(b, [&](const Term& s) {
      if (s.is_eps() && s.loose() == 1) candidates.push_back(s);
      return true;
    });
    for (const auto& s : candidates) {
      Formula sentence = make_binder_raw(Formula::Kind::forall, d.name(), make_binder_raw(Formula::Kind::exists, s.name(), s.body()));
      if (!pi2_match(sentence).ok) continue;
      if (epsilon_translate(sentence) == conclusion) return sentence;
    }
  }
  return std::nullopt;
}

Code pi2_theorem(const Code& p, const Signature& sig, std::span<const Formula> axioms) {
  try {
    EpsProof proof = decode_proof(p);
    if (proof.empty()) return 0;
    auto sentence = untranslate_pi2(proof.conclusion());
    if (!sentence) return 0;
    if (!check_eps_proof(proof, sig, axioms).accepted) return 0;
    return encode(*sentence);
  } catch (const Error&) {
    return 0;
  } catch (const std::invalid_argument&) {
    return 0;
  }
}

Signature arithmetize(const Signature& base, std::vector<Formula> axioms) {
  struct Context {
    Signature sig;
    std::vector<Formula> axioms;
  };
  auto ctx = std::make_shared<const Context>(Context{base, std::move(axioms)});
  std::map<std::string, NativeFn> natives;
  natives["prf"] = [ctx](std::span<const Natural> a) -> Natural { return proof_pred(a[0], a[1], ctx->sig, ctx->axioms) ? 1 : 0; };
  natives["pi2"] = [](std::span<const Natural> a) -> Natural { return pi2_recognizer(a[0]).ok ? 1 : 0; };
  natives["pi2thm"] = [ctx](std::span<const Natural> a) -> Natural { return pi2_theorem(a[0], ctx->sig, ctx->axioms); };
  natives["inst"] = [](std::span<const Natural> a) -> Natural {
    Pi2Match m = pi2_recognizer(a[0]);
    return m.ok ? encode(m.instance(a[1], a[2])) : Natural(0);
  };
  Signature out = base;
  extend_signature(out,
                   "prf/2: opaque\n"
                   "pi2/1: opaque\n"
                   "pi2thm/1: opaque\n"
                   "inst/3: opaque\n",
                   natives);
  return out;
}

std::string_view form_name(StarFormula::Form f) {
  switch (f) {
    case StarFormula::Form::star: return "star";
    case StarFormula::Form::doublestar: return "doublestar";
    case StarFormula::Form::triplestar: return "triplestar";
  }
  return "?";
}

std::optional<StarFormula::Form> parse_form(std::string_view name) {
  for (auto f : {StarFormula::Form::star, StarFormula::Form::doublestar, StarFormula::Form::triplestar}) {
    if (form_name(f) == name) return f;
  }
  return std::nullopt;
}

StarFormula build_star(const Signature& arith, StarFormula::Form form) {
  for (const char* name : {"prf", "pi2", "pi2thm", "inst"}) {
    if (!arith.find(name)) throw PreconditionError(std::string("signature lacks the arithmetized symbol ") + name);
  }
  // "x proves a Pi-2 sentence" implies "some y proves an instance A(x2, n) with n < y".
  const std::string matrix = "pi2(pi2thm(x)) = S(0) -> ex n < y. prf(y, inst(pi2thm(x), x, n)) = S(0)";
  std::string text;
  switch (form) {
    case StarFormula::Form::star:
      text = "all x1. all x2. (pi2(pi2thm(x1)) = S(0) -> ex y. ex n < y. prf(y, inst(pi2thm(x1), x2, n)) = S(0))";
      break;
    case StarFormula::Form::doublestar:
      text = "all x. (pi2(pi2thm(x)) = S(0) -> ex y. ex n < y. prf(y, inst(pi2thm(x), x, n)) = S(0))";
      break;
    case StarFormula::Form::triplestar:
      text = "all x. ex y. (" + matrix + ")";
      break;
  }
  return {form, parse_formula(text, arith), parse_formula(matrix, arith)};
}

Formula contract_quantifiers(const Formula& f) {
  std::vector<std::string> hints;
  Formula body = f;
  while (body.kind() == Formula::Kind::forall) {
    hints.push_back(body.hint());
    body = body.body();
  }
  if (hints.size() < 2) throw PreconditionError("contract_quantifiers needs at least two leading universal quantifiers");
  // The body keeps its indices; the new outermost binder sits above all of them.
  Formula out = body;
  for (std::size_t i = hints.size(); i-- > 0;) {
    out = make_binder_raw(Formula::Kind::bounded_forall, hints[i], out, make_bound(i));
  }
  std::set<std::string> avoid(hints.begin(), hints.end());
  return make_binder_raw(Formula::Kind::forall, fresh_name("x", avoid), out);
}

// ---- instance checking -------------------------------------------------------

namespace {

Formula matrix_at(const StarFormula& s, const Natural& p, const Natural& y) {
  return substitute(substitute(s.matrix, "x", make_numeral(p)), "y", make_numeral(y));
}

std::string prove_note(const Formula& instance, const Signature& arith, std::span<const Formula> axioms,
                       const InstanceOptions& options) {
  try {
    ProveOptions po{options.prove_lines, options.eval_budget};
    EpsProof proof = prove_true_pr_sentence(instance, arith, axioms, po);
    Verdict v = check_eps_proof(proof, arith, axioms, options.eval_budget);
    if (!v) return "instance proof rejected (" + v.to_text() + ")";
    return "instance proved in " + std::to_string(proof.size()) + " lines";
  } catch (const BudgetExceeded&) {
    return "instance proof over budget";
  } catch (const Error& e) {
    return std::string("instance proof failed: ") + e.what();
  }
}

}  // namespace

InstanceRow check_instance(const StarFormula& s, const Natural& p, const Signature& base, const Signature& arith,
                           std::span<const Formula> axioms, const InstanceOptions& options) {
  if (s.form != StarFormula::Form::triplestar) throw PreconditionError("check_instances needs the triplestar form");
  InstanceRow row{p, std::nullopt, false, {}, std::nullopt};
  try {
    Evaluator ev(arith, nullptr, options.eval_budget);
    for (Natural y = 0; y <= options.cap; ++y) {
      Formula inst = matrix_at(s, p, y);
      if (ev.formula(inst)) {
        row.y = y;
        row.note = "least y; " + prove_note(inst, arith, axioms, options);
        return row;
      }
    }
    // No small y: p proves a Pi-2 sentence, so build a proof of the needed instance.
    Code c = pi2_theorem(p, base, axioms);
    Pi2Match m = pi2_recognizer(c);
    if (!m.ok) {
      row.anomaly = true;
      row.note = "no y <= " + options.cap.str() + " and p proves no Pi-2 sentence";
      return row;
    }
    std::optional<Natural> n;
    for (Natural k = 0; k <= options.witness_cap; ++k) {
      if (ev.formula(m.instance(p, k))) {
        n = k;
        break;
      }
    }
    if (!n) {
      row.anomaly = true;
      row.note = "no witness n <= " + options.witness_cap.str() + " for the proved sentence at x = p";
      return row;
    }
    EpsProof proof = prove_true_pr_sentence(m.instance(p, *n), base, axioms, {options.prove_lines, options.eval_budget});
    Code y = encode(proof);
    if (!ev.formula(matrix_at(s, p, y))) {
      row.anomaly = true;
      row.note = "constructed y fails the matrix";
      return row;
    }
    row.y = y;
    row.coded_proof = std::move(proof);
    row.note = "constructed y: codes a kernel-accepted proof of the instance at n = " + n->str() +
               "; minimality not checked; " + prove_note(matrix_at(s, p, y), arith, axioms, options);
    return row;
  } catch (const BudgetExceeded& e) {
    row.anomaly = true;
    row.note = std::string("budget exceeded: ") + e.what();
    return row;
  }
}

std::vector<InstanceRow> check_instances(const StarFormula& s, const Natural& range_max, const Signature& base,
                                         const Signature& arith, std::span<const Formula> axioms,
                                         const InstanceOptions& options) {
  std::vector<InstanceRow> rows;
  for (Natural p = 0; p <= range_max; ++p) rows.push_back(check_instance(s, p, base, arith, axioms, options));
  return rows;
}

std::string report_text(std::span<const InstanceRow> rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.p.str() + "\t" + (r.y ? r.y->str() : std::string("-")) + "\t" + (r.anomaly ? "1" : "0") + "\t" + r.note + "\n";
  }
  return out;
}

}  // namespace epsilon
