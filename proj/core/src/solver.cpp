#include "epsilon/solver.hpp"

#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <algorithm>
#include <unordered_map>

namespace epsilon {

namespace {

struct Ranked {
  std::size_t rank;
  std::string text;
  const CriticalFormula* critical;
};

}  // namespace

std::string SolveTrace::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    out += std::to_string(i + 1) + "\t" + print(s.eps) + "\t" + s.old_value.str() + " -> " + s.new_value.str() + "\t";
    if (s.resets.empty()) {
      out += "-";
    } else {
      for (std::size_t k = 0; k < s.resets.size(); ++k) out += (k ? " ; " : "") + print(s.resets[k]);
    }
    if (s.fallback) out += "\tfallback";
    out += "\n";
  }
  return out;
}

SolveOutcome solve(const SolveProblem& problem, const Signature& sig, const SolveOptions& options) {
  SolveOutcome out;
  Assignment& a = out.assignment;

  for (const auto& ax : problem.axioms) {
    if (!ax.has_eps() && !eval_qf(ax, sig, a, options.eval_budget)) {
      out.status = SolveOutcome::Status::false_axiom;
      out.false_axiom = ax;
      return out;
    }
  }

  std::unordered_map<Term, std::size_t, TermHash> ranks;
  auto rank_cached = [&](const Term& e) {
    auto it = ranks.find(e);
    if (it != ranks.end()) return it->second;
    std::size_t r = rank(e);
    ranks.emplace(e, r);
    return r;
  };

  std::vector<Ranked> order;
  order.reserve(problem.criticals.size());
  for (const auto& c : problem.criticals) order.push_back({rank_cached(c.eps), print(c.formula), &c});
  std::stable_sort(order.begin(), order.end(), [](const Ranked& x, const Ranked& y) {
    return x.rank != y.rank ? x.rank < y.rank : x.text < y.text;
  });

  for (std::uint64_t step = 0;; ++step) {
    const CriticalFormula* violated = nullptr;
    for (const auto& r : order) {
      if (!eval_qf(r.critical->formula, sig, a, options.eval_budget)) {
        violated = r.critical;
        break;
      }
    }
    if (!violated) break;
    if (step >= options.max_steps) {
      out.status = SolveOutcome::Status::non_termination;
      return out;
    }

    const Term& e = violated->eps;
    Natural limit = eval_term(violated->witness, sig, a, options.eval_budget);
    SolveStep rec{*violated, e, a.get(e), limit, {}, true};
    Evaluator ev(sig, &a, options.eval_budget);
    for (Natural n = 0; n <= limit; ++n) {
      if (ev.formula(open(e.body(), make_numeral(n)))) {
        rec.new_value = n;
        rec.fallback = false;
        break;
      }
    }
    a.set(e, rec.new_value);

    const std::size_t er = rank_cached(e);
    for (const auto& [key, value] : a.sorted()) {
      if (rank_cached(key) > er) {
        a.erase(key);
        rec.resets.push_back(key);
      }
    }
    out.trace.steps.push_back(std::move(rec));
  }

  for (const auto& ax : problem.axioms) {
    if (!eval_qf(ax, sig, a, options.eval_budget)) {
      out.status = SolveOutcome::Status::false_axiom;
      out.false_axiom = ax;
      return out;
    }
  }
  out.status = SolveOutcome::Status::solved;
  return out;
}

bool verify(const Assignment& a, const SolveProblem& problem, const Signature& sig, std::uint64_t budget) {
  Evaluator ev(sig, &a, budget);
  for (const auto& ax : problem.axioms) {
    if (!ev.formula(ax)) return false;
  }
  for (const auto& c : problem.criticals) {
    if (!ev.formula(c.formula)) return false;
  }
  return true;
}

SolveProblem parse_problem(std::string_view text, const Signature& sig) {
  SolveProblem p;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      std::size_t colon = line.find(':');
      std::string_view tag = colon == std::string_view::npos ? line : line.substr(first, colon - first);
      if (colon == std::string_view::npos || (tag != "axiom" && tag != "critical")) {
        throw ParseError(ParseError::Kind::syntax, start + first, "expected 'axiom:' or 'critical:'");
      }
      Formula f = [&] {
        try {
          return parse_formula(line.substr(colon + 1), sig);
        } catch (const ParseError& e) {
          throw ParseError(e.kind(), start + colon + 1 + e.position(), e.message());
        }
      }();
      if (tag == "axiom") {
        p.axioms.push_back(f);
      } else {
        auto c = as_critical(f);
        if (!c) throw ParseError(ParseError::Kind::syntax, start + first, "not a critical formula A(t) -> A(eps x. A(x))");
        p.criticals.push_back(std::move(*c));
      }
    }
    start = end + 1;
  }
  return p;
}

std::string print(const SolveProblem& problem) {
  std::string out;
  for (const auto& a : problem.axioms) out += "axiom: " + print(a) + "\n";
  for (const auto& c : problem.criticals) out += "critical: " + print(c.formula) + "\n";
  return out;
}

}  // namespace epsilon
