#include "fpe/fv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fpe/diagnostics.hpp"
#include "fpe/transforms.hpp"

namespace fpe {

FluxField compute_face_flux(const Field& rho, const CoefficientSet& coeffs,
                            const EquilibriumState& eq, const Grid1D& grid,
                            double t, FaceMean mean) {
  if (rho.kind != FieldKind::scaled_rho) {
    throw std::invalid_argument("compute_face_flux: expected a scaled density field");
  }
  const int n = grid.n_nodes();
  for (int i = 0; i < n; ++i) {
    if (!(rho.values[i] > 0.0)) {
      throw std::domain_error("compute_face_flux: non-positive rho at node " +
                              std::to_string(i));
    }
  }
  const auto b2 = coeffs.b_squared(t);
  const auto& D = coeffs.diffusion;

  FluxField flux;
  flux.time = t;
  flux.face_values.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const double coeff = 0.5 * (b2[i] / (2.0 * D[i]) * eq.feq_values[i] +
                                b2[i + 1] / (2.0 * D[i + 1]) * eq.feq_values[i + 1]);
    const double rho_face =
        mean == FaceMean::geometric
            ? std::sqrt(rho.values[i] * rho.values[i + 1])
            : 0.5 * (rho.values[i] + rho.values[i + 1]);
    const double dh = (D[i + 1] * std::log(rho.values[i + 1]) -
                       D[i] * std::log(rho.values[i])) / grid.dx;
    flux.face_values[i] = coeff * rho_face * dh;
  }
  return flux;
}

Field step_fv(const Field& rho_n, const CoefficientSet& coeffs,
              const EquilibriumState& eq, const Grid1D& grid, double dt,
              double t, FaceMean mean) {
  const int n = grid.n_nodes();
  const FluxField flux = compute_face_flux(rho_n, coeffs, eq, grid, t, mean);

  Field rho_next{FieldKind::scaled_rho, std::vector<double>(n), rho_n.time + dt};
  for (int i = 0; i < n; ++i) {
    const double left = (i > 0) ? flux.face_values[i - 1] : 0.0;
    const double right = (i < n - 1) ? flux.face_values[i] : 0.0;
    const double measure = (i == 0 || i == n - 1) ? 0.5 * grid.dx : grid.dx;
    rho_next.values[i] =
        rho_n.values[i] + dt * (right - left) / (eq.feq_values[i] * measure);
    if (!(rho_next.values[i] > 0.0)) {
      throw std::runtime_error("step_fv: positivity lost at node " +
                               std::to_string(i) + ", t = " + std::to_string(t) +
                               "; the time step dt = " + std::to_string(dt) +
                               " violates the explicit stability bound, reduce dt");
    }
  }
  return rho_next;
}

double default_fv_dt(const CoefficientSet& coeffs, const Grid1D& grid) {
  const double min_D = coeffs.min_diffusion();
  double max_half_b2 = 0.0;
  for (double b : coeffs.b_profile) max_half_b2 = std::max(max_half_b2, 0.5 * b * b);
  return 0.2 * grid.dx * grid.dx * min_D / max_half_b2;
}

Trajectory solve_direct(const Field& f0, const CoefficientSet& coeffs,
                        const Grid1D& grid, double dt, double T, FaceMean mean,
                        int store_stride, double mass_tol) {
  if (f0.kind != FieldKind::density_f) {
    throw std::invalid_argument("solve_direct: expected a density field");
  }
  const double mass0 = integrate(f0.values, grid);
  if (std::abs(mass0 - 1.0) > mass_tol) {
    throw std::invalid_argument("solve_direct: initial mass " + std::to_string(mass0) +
                                " is not 1 within " + std::to_string(mass_tol));
  }
  const EquilibriumState eq =
      compute_equilibrium(coeffs.diffusion, coeffs.potential, grid);
  Problem problem;  // local aggregate for the per-step records
  problem.grid = grid;
  problem.coeffs = coeffs;
  problem.eq = eq;

  Field rho = rho_from_f(f0, eq);
  const int steps = static_cast<int>(std::llround(T / dt));
  const int stride = std::max(1, store_stride);

  Trajectory traj;
  traj.kind = FieldKind::density_f;
  traj.grid = grid;
  traj.dt = dt;

  auto record = [&](const Field& rho_level) {
    const Field f = f_from_rho(rho_level, eq);
    traj.diagnostics.push_back(make_record(f, problem, 0.0));
    traj.diagnostics.back().dissipation_rate =
        dissipation_rate_faces(rho_level.values, coeffs, eq, grid, rho_level.time);
    return f;
  };

  {
    const Field f = record(rho);
    traj.times.push_back(0.0);
    traj.values.push_back(f.values);
  }
  for (int m = 0; m < steps; ++m) {
    try {
      rho = step_fv(rho, coeffs, eq, grid, dt, m * dt, mean);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(std::string(e.what()) + " (step " +
                               std::to_string(m + 1) + ")");
    }
    const Field f = record(rho);
    if ((m + 1) % stride == 0 || m + 1 == steps) {
      traj.times.push_back(rho.time);
      traj.values.push_back(f.values);
    }
  }
  return traj;
}

}  // namespace fpe
