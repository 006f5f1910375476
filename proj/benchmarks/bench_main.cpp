#include "epsilon/epsilonizer.hpp"
#include "epsilon/goedel.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/solver.hpp"

#include <benchmark/benchmark.h>

using namespace epsilon;

namespace {

const Signature& sig() { return default_prelude(); }
const std::vector<Formula>& axioms() {
  static const std::vector<Formula> ax = default_axioms(sig());
  return ax;
}

void BM_EvalTimes(benchmark::State& state) {
  Term t = make_app("times", {make_numeral(state.range(0)), make_numeral(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(eval_term(t, sig()));
}
BENCHMARK(BM_EvalTimes)->Arg(10)->Arg(100)->Arg(1000);

void BM_EvalSqrtBelow(benchmark::State& state) {
  Term t = parse_term("sqrt_below(2500, 60)", sig());
  for (auto _ : state) benchmark::DoNotOptimize(eval_term(t, sig()));
}
BENCHMARK(BM_EvalSqrtBelow);

void BM_TautConsequence(benchmark::State& state) {
  std::vector<Formula> premises;
  std::string text = "0 = 0";
  for (int i = 1; i < state.range(0); ++i) {
    premises.push_back(parse_formula((std::to_string(i - 1) + " = 0 -> " + std::to_string(i) + " = 0").c_str(), sig()));
  }
  premises.push_back(parse_formula("0 = 0", sig()));
  Formula goal = parse_formula((std::to_string(state.range(0) - 1) + " = 0").c_str(), sig());
  for (auto _ : state) benchmark::DoNotOptimize(is_taut_consequence(premises, goal));
}
BENCHMARK(BM_TautConsequence)->Arg(8)->Arg(16)->Arg(20);

void BM_EncodeDecodeFormula(benchmark::State& state) {
  Formula f = parse_formula("all x. ex y. lt(x, y) = 1 and not (eps z. plus(z, x) = y) = 0", sig());
  for (auto _ : state) benchmark::DoNotOptimize(decode_formula(encode(f)));
}
BENCHMARK(BM_EncodeDecodeFormula);

void BM_Solve(benchmark::State& state) {
  SolveProblem p;
  for (int i = 1; i <= state.range(0); ++i) {
    Term e = make_eps("x", make_eq(make_app("times", {make_var("x"), make_var("x")}), make_numeral(i * i)));
    p.criticals.push_back(make_critical(make_numeral(i), e));
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, sig()));
}
BENCHMARK(BM_Solve)->Arg(4)->Arg(16);

void BM_ProveAndCheck(benchmark::State& state) {
  Formula f = parse_formula("all x < 6. ex y < 40. times(x, x) = y", sig());
  for (auto _ : state) {
    EpsProof p = prove_true_pr_sentence(f, sig(), axioms());
    benchmark::DoNotOptimize(check_eps_proof(p, sig(), axioms()));
  }
}
BENCHMARK(BM_ProveAndCheck);

void BM_CheckInstances(benchmark::State& state) {
  static const Signature arith = arithmetize(sig(), axioms());
  StarFormula s = build_triplestar(arith);
  for (auto _ : state) benchmark::DoNotOptimize(check_instances(s, 20, sig(), arith, axioms()));
}
BENCHMARK(BM_CheckInstances);

}  // namespace
BENCHMARK_MAIN();
