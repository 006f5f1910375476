// Command-line front end. Each subcommand parses its inputs, calls one core
// operation and maps the outcome to an exit code:
//   0 ok, 2 parse error, 3 non-termination, 4 false axiom, 5 rejected proof,
//   64 usage, 1 anything else.

#include "epsilon/epsilonizer.hpp"
#include "epsilon/extractor.hpp"
#include "epsilon/goedel.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/ops.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace epsilon;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kParse = 2, kNonTermination = 3, kFalseAxiom = 4, kRejected = 5, kUsage = 64 };

struct ExitWith {
  int code;
  std::string message;
};

struct Globals {
  std::string sig_file;
  std::uint64_t budget = kDefaultEvalBudget;
  bool trace = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitWith{kFailure, "cannot read " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ExitWith{kFailure, "cannot write " + path};
  out << text;
}

Signature load_signature(const Globals& g) {
  if (g.sig_file.empty()) return default_prelude();
  return parse_signature(read_input(g.sig_file));
}

std::vector<Formula> load_axioms(const std::string& path, const Signature& sig) {
  if (path.empty()) return default_axioms(sig);
  auto parsed = parse_formula_lines(read_input(path), sig);
  return rewrite_axioms(parsed);
}

int run_translate(const Globals& g, const std::string& input, const std::string& output, bool print_rank) {
  Signature sig = load_signature(g);
  std::string out;
  for (const auto& f : parse_formula_lines(read_input(input), sig)) {
    Formula t = epsilon_translate(f);
    out += print(t) + "\n";
    if (print_rank) {
      for (const auto& e : closed_eps_subterms(t)) out += "# rank " + std::to_string(rank(e)) + "\t" + print(e) + "\n";
    }
  }
  write_output(output, out);
  return kOk;
}

int run_solve(const Globals& g, const std::string& input, const std::string& output, std::uint64_t max_steps,
              const std::string& trace_file) {
  Signature sig = load_signature(g);
  SolveProblem problem = parse_problem(read_input(input), sig);
  SolveOutcome o = solve(problem, sig, {max_steps, g.budget});
  if (g.trace || !trace_file.empty()) {
    if (trace_file.empty()) {
      std::cerr << o.trace.to_text();
    } else {
      write_output(trace_file, o.trace.to_text());
    }
  }
  switch (o.status) {
    case SolveOutcome::Status::non_termination:
      std::cerr << "non-termination: no solution within " << max_steps << " steps\n";
      return kNonTermination;
    case SolveOutcome::Status::false_axiom:
      std::cerr << "false axiom: " << print(*o.false_axiom) << "\n";
      return kFalseAxiom;
    case SolveOutcome::Status::solved:
      break;
  }
  write_output(output, o.assignment.to_text());
  return kOk;
}

int run_check(const Globals& g, const std::string& input, const std::string& axioms_file) {
  Signature sig = load_signature(g);
  auto axioms = load_axioms(axioms_file, sig);
  EpsProof p = parse_proof(read_input(input), sig);
  Verdict v = check_eps_proof(p, sig, axioms, g.budget);
  std::cout << v.to_text() << "\n";
  return v ? kOk : kRejected;
}

int run_extract(const Globals& g, const std::string& input, const std::string& eps_text, const std::string& axioms_file,
                const std::string& output, std::uint64_t max_steps) {
  Signature sig = load_signature(g);
  auto axioms = load_axioms(axioms_file, sig);
  EpsProof p = parse_proof(read_input(input), sig);
  Term e = parse_term(eps_text, sig);
  ExtractOptions options;
  options.solve = {max_steps, g.budget};
  options.prove.eval_budget = g.budget;
  try {
    Extraction x = extract_witness(p, e, sig, axioms, options);
    if (g.trace) std::cerr << x.outcome.trace.to_text();
    if (x.instance_not_eps_free) {
      std::cerr << "warning: the instance still contained eps terms; they were replaced by their assigned values\n";
    }
    std::cout << "witness: " << x.witness.str() << "\n";
    if (output.empty()) {
      std::cout << print(x.instance_proof);
    } else {
      write_output(output, print(x.instance_proof));
    }
    return kOk;
  } catch (const ProofRejected& r) {
    std::cerr << r.what() << "\n";
    return kRejected;
  } catch (const SolverFailure& f) {
    if (g.trace) std::cerr << f.outcome.trace.to_text();
    std::cerr << f.what() << "\n";
    return f.outcome.status == SolveOutcome::Status::non_termination ? kNonTermination : kFalseAxiom;
  }
}

int run_build_star(const Globals& g, const std::string& form_text, bool contract, const std::string& output) {
  auto form = parse_form(form_text);
  if (!form) throw ExitWith{kUsage, "unknown form '" + form_text + "' (expected star, doublestar or triplestar)"};
  Signature base = load_signature(g);
  Signature arith = arithmetize(base, default_axioms(base));
  StarFormula s = build_star(arith, *form);
  Formula f = contract ? contract_quantifiers(s.formula) : s.formula;
  write_output(output, print(f) + "\n");
  return kOk;
}

int run_check_instances(const Globals& g, std::uint64_t range, std::uint64_t cap, const std::vector<std::string>& extra_proofs,
                        const std::string& axioms_file, const std::string& output) {
  Signature base = load_signature(g);
  auto axioms = load_axioms(axioms_file, base);
  Signature arith = arithmetize(base, axioms);
  StarFormula s = build_triplestar(arith);
  InstanceOptions options;
  options.cap = cap;
  options.eval_budget = g.budget;
  auto rows = check_instances(s, range, base, arith, axioms, options);
  for (const auto& path : extra_proofs) {
    EpsProof p = parse_proof(read_input(path), base);
    rows.push_back(check_instance(s, encode(p), base, arith, axioms, options));
  }
  std::size_t anomalies = 0;
  for (const auto& r : rows) anomalies += r.anomaly;
  write_output(output, report_text(rows));
  std::cerr << rows.size() << " rows, " << anomalies << " anomalies\n";
  return kOk;
}

int run_encode(const Globals& g, const std::string& input, const std::string& as) {
  Signature sig = load_signature(g);
  std::string text = read_input(input);
  if (as == "proof") {
    std::cout << encode(parse_proof(text, sig)).str() << "\n";
    return kOk;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Code c = as == "term" ? encode(parse_term(line, sig)) : encode(parse_formula(line, sig));
    std::cout << c.str() << "\n";
  }
  return kOk;
}

int run_decode(const std::string& input) {
  std::istringstream lines(read_input(input));
  std::string line;
  while (std::getline(lines, line)) {
    std::string digits;
    for (char c : line) {
      if (c != ' ' && c != '\t' && c != '\r') digits += c;
    }
    if (digits.empty() || digits[0] == '#') continue;
    Code c;
    try {
      c = parse_natural(digits);
    } catch (const std::exception&) {
      throw ExitWith{kParse, "not a decimal code: " + digits};
    }
    Decoded d = decode(c);
    if (auto* t = std::get_if<Term>(&d)) std::cout << print(*t) << "\n";
    if (auto* f = std::get_if<Formula>(&d)) std::cout << print(*f) << "\n";
    if (auto* p = std::get_if<EpsProof>(&d)) std::cout << print(*p);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epsilon calculus toolkit: translation, substitution, proof checking, witness extraction, arithmetization"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--sig", g.sig_file, "Signature file (default: built-in prelude)");
  app.add_option("--budget", g.budget, "Evaluation step budget")->capture_default_str();
  app.add_flag("--trace", g.trace, "Write the solver trace to stderr");

  int result = kOk;
  std::function<int()> action;

  auto* translate = app.add_subcommand("translate", "Epsilon-translate quantified formulas, one per line");
  std::string tr_in, tr_out;
  bool print_rank = false;
  translate->add_option("input", tr_in, "Formula file ('-' for stdin)")->required();
  translate->add_option("-o,--output", tr_out, "Output file (default stdout)");
  translate->add_flag("--print-rank", print_rank, "Append the rank of each eps term as comment lines");
  translate->callback([&] { action = [&] { return run_translate(g, tr_in, tr_out, print_rank); }; });

  auto* solve_cmd = app.add_subcommand("solve", "Run the substitution procedure on a problem file");
  std::string so_in, so_out, so_trace;
  std::uint64_t max_steps = kDefaultMaxSteps;
  solve_cmd->add_option("input", so_in, "Problem file")->required();
  solve_cmd->add_option("-o,--output", so_out, "Assignment file (default stdout)");
  solve_cmd->add_option("--max-steps", max_steps, "Step limit")->capture_default_str();
  solve_cmd->add_option("--trace-file", so_trace, "Write the trace to this file");
  solve_cmd->callback([&] { action = [&] { return run_solve(g, so_in, so_out, max_steps, so_trace); }; });

  auto* extract = app.add_subcommand("extract", "Extract a numeral witness from a proof of A(e)");
  std::string ex_in, ex_eps, ex_axioms, ex_out;
  std::uint64_t ex_steps = kDefaultMaxSteps;
  extract->add_option("input", ex_in, "Proof file")->required();
  extract->add_option("--eps-term", ex_eps, "The designated eps term e = eps x. A(x)")->required();
  extract->add_option("--axioms", ex_axioms, "Axiom file (default: built-in axioms)");
  extract->add_option("-o,--output", ex_out, "Instance proof file (default stdout)");
  extract->add_option("--max-steps", ex_steps, "Solver step limit")->capture_default_str();
  extract->callback([&] { action = [&] { return run_extract(g, ex_in, ex_eps, ex_axioms, ex_out, ex_steps); }; });

  auto* check = app.add_subcommand("check", "Check an epsilon proof");
  std::string ch_in, ch_axioms;
  check->add_option("input", ch_in, "Proof file")->required();
  check->add_option("--axioms", ch_axioms, "Axiom file (default: built-in axioms)");
  check->callback([&] { action = [&] { return run_check(g, ch_in, ch_axioms); }; });

  auto* goedel = app.add_subcommand("goedel", "Goedel numbering and the starred sentences");
  goedel->require_subcommand(1);
  auto* build = goedel->add_subcommand("build-star", "Print one of the starred sentences");
  std::string form = "triplestar", bs_out;
  bool contract = false;
  build->add_option("--form", form, "star, doublestar or triplestar")->capture_default_str();
  build->add_flag("--contract", contract, "Contract the leading universal quantifiers");
  build->add_option("-o,--output", bs_out, "Output file (default stdout)");
  build->callback([&] { action = [&] { return run_build_star(g, form, contract, bs_out); }; });

  auto* instances = goedel->add_subcommand("check-instances", "Check instances of the triplestar matrix");
  std::uint64_t range = 100, cap = 64;
  std::vector<std::string> extra;
  std::string ci_axioms, ci_out;
  instances->add_option("--range", range, "Check p = 0..range")->capture_default_str();
  instances->add_option("--cap", cap, "Largest y searched directly")->capture_default_str();
  instances->add_option("--extra-proof", extra, "Also check p = code of this proof file");
  instances->add_option("--axioms", ci_axioms, "Axiom file (default: built-in axioms)");
  instances->add_option("-o,--output", ci_out, "Report file (default stdout)");
  instances->callback([&] { action = [&] { return run_check_instances(g, range, cap, extra, ci_axioms, ci_out); }; });

  auto* enc = goedel->add_subcommand("encode", "Print the code of each formula line, or of a whole proof");
  std::string en_in, en_as = "formula";
  enc->add_option("input", en_in, "Input file ('-' for stdin)")->required();
  enc->add_option("--as", en_as, "formula, term or proof")->check(CLI::IsMember({"formula", "term", "proof"}))->capture_default_str();
  enc->callback([&] { action = [&] { return run_encode(g, en_in, en_as); }; });

  auto* dec = goedel->add_subcommand("decode", "Print the object behind each code line");
  std::string de_in = "-";
  dec->add_option("input", de_in, "Code file (default stdin)");
  dec->callback([&] { action = [&] { return run_decode(de_in); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    result = action ? action() : kUsage;
  } catch (const ExitWith& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error " << e.what() << "\n";
    return kParse;
  } catch (const SignatureError& e) {
    std::cerr << "signature error: " << e.what() << "\n";
    return kParse;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return result;
}
