#include "epsilon/printer.hpp"

#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"

#include <set>
#include <vector>

namespace epsilon {

namespace {

// Binding strength; an operand printed below its required level gets parentheses.
enum Level : int { kBinder = 0, kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

enum class TermCtx { top, argument, operand };

class Printer {
 public:
  std::string term(const Term& t, TermCtx ctx) {
    switch (t.kind()) {
      case Term::Kind::numeral:
        return numeral(t.value());
      case Term::Kind::succ:
        return "S(" + term(t.operand(), TermCtx::argument) + ")";
      case Term::Kind::var:
        return t.name();
      case Term::Kind::bound: {
        if (t.index() >= scope_.size()) return "#" + std::to_string(t.index());
        return scope_[scope_.size() - 1 - t.index()];
      }
      case Term::Kind::app: {
        std::string out = t.name() + "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          out += term(t.args()[i], TermCtx::argument);
        }
        return out + ")";
      }
      case Term::Kind::eps: {
        std::string name = bind(t.name(), t.body());
        scope_.push_back(name);
        std::string body = formula(t.body(), kBinder);
        scope_.pop_back();
        std::string out = "eps " + name + ". " + body;
        return ctx == TermCtx::operand ? "(" + out + ")" : out;
      }
    }
    return "?";
  }

  std::string formula(const Formula& f, int required) {
    int own = level(f);
    std::string out = formula_bare(f);
    return own < required ? "(" + out + ")" : out;
  }

 private:
  static int level(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::eq:
      case Formula::Kind::negation:
        return kUnary;
      case Formula::Kind::conjunction:
        return kAnd;
      case Formula::Kind::disjunction:
        return kOr;
      case Formula::Kind::implication:
        return kImplies;
      default:
        return kBinder;
    }
  }

  std::string formula_bare(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::eq:
        return term(f.lhs(), TermCtx::operand) + " = " + term(f.rhs(), TermCtx::operand);
      case Formula::Kind::negation:
        return "not " + formula(f.sub(), kUnary);
      case Formula::Kind::conjunction:
        return formula(f.left(), kAnd) + " and " + formula(f.right(), kUnary);
      case Formula::Kind::disjunction:
        return formula(f.left(), kOr) + " or " + formula(f.right(), kAnd);
      case Formula::Kind::implication:
        return formula(f.left(), kOr) + " -> " + formula(f.right(), kImplies);
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists:
      case Formula::Kind::forall:
      case Formula::Kind::exists: {
        bool universal = f.kind() == Formula::Kind::forall || f.kind() == Formula::Kind::bounded_forall;
        std::string out = universal ? "all " : "ex ";
        std::string bound;
        if (f.is_bounded()) bound = " < " + term(f.bound(), TermCtx::operand);
        std::string name = bind(f.hint(), f.body());
        scope_.push_back(name);
        std::string body = formula(f.body(), kBinder);
        scope_.pop_back();
        return out + name + bound + ". " + body;
      }
    }
    return "?";
  }

  // Name for a binder over `body`, avoiding enclosing binder names and the
  // body's free variables.
  std::string bind(const std::string& hint, const Formula& body) {
    std::set<std::string> avoid(scope_.begin(), scope_.end());
    if (body.has_free_vars()) collect_free_vars(body, avoid);
    std::string base = is_identifier(hint) ? hint : "x";
    return fresh_name(base, avoid);
  }

  static std::string numeral(const Natural& n) {
    if (n > kMaxChainNumeral) return n.str();
    unsigned k = static_cast<unsigned>(n);
    std::string out;
    out.reserve(3 * k + 1);
    for (unsigned i = 0; i < k; ++i) out += "S(";
    out += "0";
    out.append(k, ')');
    return out;
  }

  std::vector<std::string> scope_;
};

}  // namespace

std::string print(const Term& t) {
  Printer p;
  return p.term(t, TermCtx::top);
}

std::string print(const Formula& f) {
  Printer p;
  return p.formula(f, kBinder);
}

}  // namespace epsilon
