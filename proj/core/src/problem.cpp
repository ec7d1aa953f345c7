#include "fpe/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fpe/transforms.hpp"

namespace fpe {

Problem make_problem(const Grid1D& grid, const CoefficientSet& coeffs,
                     std::span<const double> rho0_raw, double norm_tol) {
  Problem p;
  p.grid = grid;
  p.coeffs = coeffs;
  p.eq = compute_equilibrium(coeffs.diffusion, coeffs.potential, grid, norm_tol);

  const int n = grid.n_nodes();
  if (static_cast<int>(rho0_raw.size()) != n) {
    throw std::invalid_argument("make_problem: rho0 length mismatch");
  }
  std::vector<double> f0(n);
  for (int i = 0; i < n; ++i) {
    if (!(rho0_raw[i] > 0.0)) {
      throw std::domain_error("make_problem: non-positive rho0 at node " +
                              std::to_string(i));
    }
    f0[i] = rho0_raw[i] * p.eq.feq_values[i];
  }
  const double mass = integrate(f0, grid);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::domain_error("make_problem: initial mass is not a positive finite number");
  }
  p.rho0.resize(n);
  for (int i = 0; i < n; ++i) p.rho0[i] = rho0_raw[i] / mass;
  p.h0 = initial_log_state(p.rho0, coeffs.diffusion);
  return p;
}

}  // namespace fpe
