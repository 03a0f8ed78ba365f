#include <benchmark/benchmark.h>

#include <cmath>

#include "focklab/hermitian.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/sampling.hpp"
#include "focklab/special.hpp"
#include "focklab/toeplitz.hpp"

using namespace focklab;

static void BM_GaussLaguerre(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_laguerre(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GaussLaguerre)->Arg(80)->Arg(160)->Arg(256);

static void BM_AssembleSector(benchmark::State& state) {
  const Rules rules;
  const SimpleSymbol s({{Region::sector(0.3, 1.4, 0.2, 2.0), 1.0}});
  for (auto _ : state) benchmark::DoNotOptimize(assemble(s, static_cast<std::size_t>(state.range(0)), rules));
}
BENCHMARK(BM_AssembleSector)->Arg(20)->Arg(40)->Arg(60);

static void BM_AssembleOffCentreDisc(benchmark::State& state) {
  const Rules rules;
  const SimpleSymbol s({{Region::disc({1.0, 0.5}, 1.0 / std::sqrt(kPi)), 1.0}});
  for (auto _ : state) benchmark::DoNotOptimize(assemble(s, static_cast<std::size_t>(state.range(0)), rules));
}
BENCHMARK(BM_AssembleOffCentreDisc)->Arg(20)->Arg(40)->Arg(60);

static void BM_OperatorNorm(benchmark::State& state) {
  const Rules rules;
  auto rng = job_rng(1, 0);
  const auto m = assemble(random_simple_symbol(rng), static_cast<std::size_t>(state.range(0)), rules);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(m));
}
BENCHMARK(BM_OperatorNorm)->Arg(20)->Arg(40)->Arg(60);

static void BM_Jacobi(benchmark::State& state) {
  const Rules rules;
  auto rng = job_rng(2, 0);
  const auto m = assemble(random_simple_symbol(rng), static_cast<std::size_t>(state.range(0)), rules);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(m));
}
BENCHMARK(BM_Jacobi)->Arg(20)->Arg(60);
BENCHMARK_MAIN();
