#include <benchmark/benchmark.h>

#include "vspectra/nonlinear.hpp"

using namespace vspectra;

namespace {

void BM_Step1D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ModelParams p{2.0, 3.0, 1.0, 1.0, 1.0, 1.0, PressureLaw::power(1.0, 1.0)};
  const DerivedCoeffs c = derive_coeffs(p);
  const TorusGrid grid = TorusGrid::make(1, n, 100.0);
  StepperConfig cfg;
  cfg.dt = 0.4 * cfg.cfl_limit / (c.a * grid.k_max());
  TorusSolver solver(grid, p, c, cfg);
  TorusField f = TorusField::zero(grid);
  f.rho_h[1] = f.rho_h[static_cast<std::size_t>(n - 1)] = 1e-4;
  for (auto _ : state) {
    solver.step(f);
    benchmark::DoNotOptimize(f.rho_h[1]);
  }
}
BENCHMARK(BM_Step1D)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Step3D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ModelParams p{1.0, 1.0, 1.0, 2.0, 1.0, 1.0, PressureLaw::power(1.0, 1.0)};
  const DerivedCoeffs c = derive_coeffs(p);
  const TorusGrid grid = TorusGrid::make(3, n, 4.0 * M_PI);
  StepperConfig cfg;
  cfg.dt = 0.4 * cfg.cfl_limit / (c.a * grid.k_max());
  TorusSolver solver(grid, p, c, cfg);
  TorusField f = TorusField::zero(grid);
  f.rho_h[1] = f.rho_h[static_cast<std::size_t>(n - 1)] = 1e-4;
  for (auto _ : state) {
    solver.step(f);
    benchmark::DoNotOptimize(f.rho_h[1]);
  }
}
BENCHMARK(BM_Step3D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
