#include <benchmark/benchmark.h>

#include "cvmi/montecarlo.hpp"
#include "cvmi/optimize.hpp"
#include "cvmi/schemes.hpp"

namespace {

void BM_BuildScheme(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cvmi::build_scheme("epr_conj_2", 1.0, 2.0));
}
BENCHMARK(BM_BuildScheme);

void BM_Evaluate(benchmark::State& state) {
  const cvmi::SchemeSpec spec = cvmi::build_scheme("epr_disp_2", 1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(cvmi::evaluate(spec));
}
BENCHMARK(BM_Evaluate);

void BM_MaximizeVariance(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cvmi::maximize_variance("1d_sq_2", 1.0, 2.0));
}
BENCHMARK(BM_MaximizeVariance);

void BM_MonteCarlo(benchmark::State& state) {
  const cvmi::SchemeSpec spec = cvmi::build_scheme("2d_coh_1", 1.0, 1.0);
  const auto samples = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cvmi::estimate_mi(spec, samples, 1, cvmi::LogBase::Bits,
                                               static_cast<int>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_MonteCarlo)->Args({20000, 1})->Args({200000, 1})->Args({200000, 4});

}  // namespace

BENCHMARK_MAIN();
