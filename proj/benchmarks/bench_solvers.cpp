#include <benchmark/benchmark.h>

#include "fpe/diagnostics.hpp"
#include "fpe/experiment.hpp"
#include "fpe/fv.hpp"

namespace {

fpe::RunConfig benchmark_config(int n_cells) {
  fpe::RunConfig c = fpe::preset("generic_benchmark");
  c.n_cells = n_cells;
  c.dt = fpe::stable_dt(c);
  return c;
}

void BM_FvMarch(benchmark::State& state) {
  const fpe::RunConfig c = benchmark_config(static_cast<int>(state.range(0)));
  const fpe::Grid1D grid = fpe::build_grid(c.x_min, c.x_max, c.n_cells);
  const fpe::CoefficientSet coeffs = fpe::sample_coefficients(c.coeffs, grid);
  const fpe::Problem problem =
      fpe::make_problem(grid, coeffs, fpe::sample_profile(c.rho0, grid));
  std::vector<double> f0(grid.n_nodes());
  for (int i = 0; i < grid.n_nodes(); ++i) {
    f0[i] = problem.rho0[i] * problem.eq.feq_values[i];
  }
  const double dt = fpe::fit_dt(c.T, c.dt);
  for (auto _ : state) {
    auto traj = fpe::solve_direct(fpe::Field{fpe::FieldKind::density_f, f0, 0.0},
                                  coeffs, grid, dt, c.T, fpe::FaceMean::geometric,
                                  1 << 20);
    benchmark::DoNotOptimize(traj.diagnostics.back().free_energy);
  }
}
BENCHMARK(BM_FvMarch)->Arg(50)->Arg(100)->Arg(200);

void BM_FixedPointSolve(benchmark::State& state) {
  const fpe::RunConfig c = benchmark_config(static_cast<int>(state.range(0)));
  const fpe::Grid1D grid = fpe::build_grid(c.x_min, c.x_max, c.n_cells);
  const fpe::CoefficientSet coeffs = fpe::sample_coefficients(c.coeffs, grid);
  const fpe::Problem problem =
      fpe::make_problem(grid, coeffs, fpe::sample_profile(c.rho0, grid));
  fpe::FixedPointConfig fpc;
  fpc.T = c.T;
  fpc.dt = fpe::fit_dt(c.T, c.dt);
  for (auto _ : state) {
    auto [xi, report] = fpe::iterate_to_fixed_point(problem, fpc);
    benchmark::DoNotOptimize(report.iterates);
  }
}
BENCHMARK(BM_FixedPointSolve)->Arg(50)->Arg(100);

void BM_HolderNorms(benchmark::State& state) {
  const fpe::Grid1D grid = fpe::build_grid(0.0, 1.0, static_cast<int>(state.range(0)));
  const fpe::CounterRng rng{7};
  const double T = 0.1;
  const fpe::Trajectory traj = fpe::random_zero_trajectory(grid, T / 24.0, T, rng, 0);
  for (auto _ : state) {
    auto report = fpe::holder_norms(traj, 0.5);
    benchmark::DoNotOptimize(report.c2_alpha_norm);
  }
}
BENCHMARK(BM_HolderNorms)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
