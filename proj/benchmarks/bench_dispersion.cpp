#include <benchmark/benchmark.h>

#include "vspectra/dispersion.hpp"
#include "vspectra/semigroup.hpp"

using namespace vspectra;

namespace {

ModelParams unstable_params() {
  ModelParams p{2.0, 3.0, 1.0, 1.0, 1.0, 1.0, PressureLaw::power(1.0, 1.0)};
  return p;
}

void BM_EigenSolve(benchmark::State& state) {
  const ModelParams p = unstable_params();
  const DerivedCoeffs c = derive_coeffs(p);
  double r = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigen_solve(symbol(c, p, r)));
    r = r < 1e3 ? r * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_EigenSolve);

void BM_GrowthMax(benchmark::State& state) {
  const ModelParams p = unstable_params();
  const DerivedCoeffs c = derive_coeffs(p);
  for (auto _ : state) benchmark::DoNotOptimize(find_growth_max(c, p));
}
BENCHMARK(BM_GrowthMax)->Unit(benchmark::kMillisecond);

void BM_ModeExp(benchmark::State& state) {
  const ModelParams p = unstable_params();
  const DerivedCoeffs c = derive_coeffs(p);
  const ModePropagator prop(c, p, 0.7);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prop(t));
    t += 0.01;
  }
}
BENCHMARK(BM_ModeExp);

}  // namespace

BENCHMARK_MAIN();
