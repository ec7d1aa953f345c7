#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fpe/fixed_point.hpp"
#include "fpe/transforms.hpp"

using namespace fpe;

namespace {

Problem benchmark_problem(int n = 50) {
  const Grid1D g = build_grid(0.0, 1.0, n);
  CoefficientSpec spec;
  spec.diffusion = {Family::cosine_bump, {1.0, 0.2, 1.0}};
  spec.potential = {Family::constant, {0.0}};
  spec.noise = {Family::constant, {std::sqrt(2.0)}};
  const CoefficientSet coeffs = sample_coefficients(spec, g);
  std::vector<double> rho0(g.n_nodes());
  for (int i = 0; i < g.n_nodes(); ++i) {
    rho0[i] = 1.0 + 0.1 * std::cos(M_PI * g.node_coords[i]);
  }
  return make_problem(g, coeffs, rho0);
}

FixedPointConfig quick_config() {
  FixedPointConfig c;
  c.T = 0.05;
  c.dt = 2.5e-4;
  return c;
}

}  // namespace

TEST_CASE("kappa closed-form values and monotonicity") {
  CHECK(kappa(0.0, 0.5) == 0.0);
  CHECK(kappa(1.0, 0.25) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(kappa(1.0, 0.5) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(kappa(1.0, 0.75) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(kappa(0.25, 0.5) == doctest::Approx(1.2437).epsilon(1e-4));
  CHECK_THROWS_AS(kappa(-1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(kappa(1.0, 1.5), std::invalid_argument);

  double prev = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    prev = 0.0;
    for (double T = 0.01; T <= 1.0; T += 0.01) {
      const double k = kappa(T, alpha);
      CHECK(k > prev);
      prev = k;
    }
  }
  CHECK(kappa(1e-8, 0.5) <= 1e-3);
}

TEST_CASE("equilibrium initial data converges immediately to zero") {
  const Grid1D g = build_grid(0.0, 1.0, 40);
  CoefficientSpec spec;
  spec.diffusion = {Family::constant, {1.0}};
  spec.potential = {Family::constant, {0.0}};
  spec.noise = {Family::constant, {std::sqrt(2.0)}};
  const Problem problem = make_problem(g, sample_coefficients(spec, g),
                                       std::vector<double>(g.n_nodes(), 1.0));
  FixedPointConfig c = quick_config();
  auto [xi, report] = iterate_to_fixed_point(problem, c);
  CHECK(report.converged);
  CHECK(report.iterates == 1);
  CHECK(xi.sup_abs() <= 1e-12);
  CHECK(report.compatibility_ok);
}

TEST_CASE("benchmark iteration contracts and converges") {
  const Problem problem = benchmark_problem();
  FixedPointConfig c = quick_config();
  auto [xi, report] = iterate_to_fixed_point(problem, c);
  CHECK(report.converged);
  CHECK(report.iterates <= 15);
  for (double r : report.ratios) CHECK(r < 1.0);
  CHECK(report.sup_diffs.back() <= c.fixed_point_tol);

  // Fixed-point residual after convergence.
  const Trajectory again = apply_solution_map(xi, problem, c);
  CHECK(sup_distance(again, xi) <= c.fixed_point_tol);

  // Reconstructed density is strictly positive everywhere.
  const Trajectory f = reconstruct_density(xi, problem);
  for (const auto& level : f.values) {
    for (double v : level) CHECK(v > 0.0);
  }
}

TEST_CASE("contraction ratio estimator") {
  const Problem problem = benchmark_problem(32);
  FixedPointConfig c = quick_config();
  c.dt = 1e-3;
  const Trajectory zero = zero_trajectory(FieldKind::deviation_xi, problem.grid,
                                          c.dt, c.T);
  SUBCASE("identical inputs give zero") {
    CHECK(estimate_contraction_ratio(zero, zero, problem, c) == 0.0);
  }
  SUBCASE("distinct small perturbations contract") {
    Trajectory psi = zero;
    for (int m = 1; m < psi.n_levels(); ++m) {
      for (int i = 0; i < problem.grid.n_nodes(); ++i) {
        psi.values[m][i] = 0.01 * psi.times[m] *
                           std::cos(M_PI * problem.grid.node_coords[i]);
      }
    }
    const double ratio = estimate_contraction_ratio(psi, zero, problem, c);
    CHECK(ratio < 1.0);
  }
}

TEST_CASE("divergence guard aborts with a recommendation") {
  const Problem problem = benchmark_problem(32);
  FixedPointConfig c = quick_config();
  c.dt = 1e-3;
  c.m_cap = 1e-6;  // force the guard to trip on the first iterate
  CHECK_THROWS_WITH_AS(iterate_to_fixed_point(problem, c),
                       doctest::Contains("smaller T"), std::runtime_error);
}

TEST_CASE("initial iterate must vanish at t = 0") {
  const Problem problem = benchmark_problem(32);
  FixedPointConfig c = quick_config();
  c.dt = 1e-3;
  Trajectory bad = zero_trajectory(FieldKind::deviation_xi, problem.grid, c.dt, c.T);
  bad.values[0][3] = 0.1;
  CHECK_THROWS_AS(iterate_to_fixed_point(problem, c, &bad), std::invalid_argument);
}

TEST_CASE("uniqueness probe: distinct starts land on the same fixed point") {
  const Problem problem = benchmark_problem(40);
  FixedPointConfig c = quick_config();
  c.dt = 5e-4;
  auto [xi_a, rep_a] = iterate_to_fixed_point(problem, c);

  Trajectory start = zero_trajectory(FieldKind::deviation_xi, problem.grid, c.dt, c.T);
  for (int m = 1; m < start.n_levels(); ++m) {
    for (int i = 0; i < problem.grid.n_nodes(); ++i) {
      start.values[m][i] = 0.05 * start.times[m] *
                           std::sin(2.0 * M_PI * problem.grid.node_coords[i]);
    }
  }
  auto [xi_b, rep_b] = iterate_to_fixed_point(problem, c, &start);
  CHECK(rep_a.converged);
  CHECK(rep_b.converged);
  CHECK(sup_distance(xi_a, xi_b) <= 10.0 * c.fixed_point_tol);
}

TEST_CASE("halving T decreases the worst contraction ratio") {
  const Problem problem = benchmark_problem(40);
  auto worst_ratio = [&](double T) {
    FixedPointConfig c = quick_config();
    c.T = T;
    c.dt = T / 100.0;
    auto [xi, report] = iterate_to_fixed_point(problem, c);
    REQUIRE(report.converged);
    // Ignore quotients whose numerator sits at the round-off floor.
    double w = 0.0;
    for (std::size_t k = 0; k + 1 < report.sup_diffs.size(); ++k) {
      if (report.sup_diffs[k + 1] > 100.0 * c.fixed_point_tol) {
        w = std::max(w, report.sup_diffs[k + 1] / report.sup_diffs[k]);
      }
    }
    return w;
  };
  CHECK(worst_ratio(0.025) < worst_ratio(0.05));
}
