#include "fpe/fixed_point.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "fpe/transforms.hpp"

namespace fpe {

Trajectory apply_solution_map(const Trajectory& psi, const Problem& problem,
                              const FixedPointConfig& config) {
  return solve_linear_parabolic(psi, problem, config.dt, config.T, config.theta,
                                config.assembly);
}

double kappa(double T, double alpha) {
  if (T < 0.0) throw std::invalid_argument("kappa: T must be nonnegative");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("kappa: alpha must lie in (0, 1)");
  }
  if (T == 0.0) return 0.0;
  const double p = std::pow(T, 0.5 * (1.0 + alpha)) + std::sqrt(T);
  const double q = T + std::pow(T, 1.0 - 0.5 * alpha);
  return p * p + p * q;
}

std::pair<Trajectory, IterationReport> iterate_to_fixed_point(
    const Problem& problem, const FixedPointConfig& config,
    const Trajectory* initial_iterate) {
  IterationReport report;
  report.kappa_T = kappa(config.T, config.alpha);

  const auto compat = check_compatibility(problem.rho0, problem.coeffs.diffusion,
                                          problem.grid,
                                          10.0 * problem.grid.dx * problem.grid.dx);
  report.compatibility_ok = compat.ok;
  report.compatibility_residual_left = compat.residual_left;
  report.compatibility_residual_right = compat.residual_right;
  if (!compat.ok) {
    std::fprintf(stderr,
                 "fpe: initial data violates the no-flux compatibility condition "
                 "(residuals %.3g, %.3g); run is outside the classical theory\n",
                 compat.residual_left, compat.residual_right);
  }

  Trajectory xi = initial_iterate
                      ? *initial_iterate
                      : zero_trajectory(FieldKind::deviation_xi, problem.grid,
                                        config.dt, config.T);
  for (double v : xi.values.front()) {
    if (v != 0.0) {
      throw std::invalid_argument("iterate_to_fixed_point: initial iterate must "
                                  "vanish at t = 0");
    }
  }

  for (int k = 0; k < config.max_outer_iters; ++k) {
    Trajectory next = apply_solution_map(xi, problem, config);
    const double diff = sup_distance(next, xi);
    report.sup_diffs.push_back(diff);
    if (report.sup_diffs.size() >= 2) {
      const double prev = report.sup_diffs[report.sup_diffs.size() - 2];
      report.ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
    }
    xi = std::move(next);
    ++report.iterates;
    if (xi.sup_abs() > config.m_cap) {
      throw std::runtime_error(
          "iterate_to_fixed_point: iterate sup norm " + std::to_string(xi.sup_abs()) +
          " exceeded the divergence guard " + std::to_string(config.m_cap) +
          "; the horizon T = " + std::to_string(config.T) +
          " is too large for this data, retry with a smaller T");
    }
    if (diff <= config.fixed_point_tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(xi), std::move(report)};
}

double estimate_contraction_ratio(const Trajectory& psi1, const Trajectory& psi2,
                                  const Problem& problem,
                                  const FixedPointConfig& config) {
  const double denom = sup_distance(psi1, psi2);
  if (denom == 0.0) return 0.0;
  const Trajectory eta1 = apply_solution_map(psi1, problem, config);
  const Trajectory eta2 = apply_solution_map(psi2, problem, config);
  return sup_distance(eta1, eta2) / denom;
}

Trajectory reconstruct_density(const Trajectory& xi, const Problem& problem) {
  if (xi.kind != FieldKind::deviation_xi) {
    throw std::invalid_argument("reconstruct_density: expected a deviation trajectory");
  }
  Trajectory f;
  f.kind = FieldKind::density_f;
  f.grid = xi.grid;
  f.dt = xi.dt;
  f.times = xi.times;
  f.values.reserve(xi.values.size());
  for (int m = 0; m < xi.n_levels(); ++m) {
    const Field h = h_from_xi(xi.level(m), problem.h0);
    const Field rho = rho_from_h(h, problem.coeffs.diffusion);
    f.values.push_back(f_from_rho(rho, problem.eq).values);
  }
  return f;
}

}  // namespace fpe
