#ifndef FPE_FV_HPP
#define FPE_FV_HPP

#include "fpe/field.hpp"
#include "fpe/problem.hpp"

namespace fpe {

enum class FaceMean { geometric, arithmetic };

/// Fluxes at the n_cells faces between adjacent nodes. The two boundary
/// faces carry exactly zero flux (natural boundary condition) and are not
/// stored.
struct FluxField {
  std::vector<double> face_values;
  double time = 0.0;
};

/// Face flux of the divergence-form scaled problem:
///   F_{i+1/2} = avg((b^2/2D) feq) * mean(rho_i, rho_{i+1}) * (h_{i+1} - h_i)/dx
/// with h = D log rho. The geometric mean makes the flux vanish exactly
/// whenever D log rho is constant, so rho = 1 is an exact steady state.
FluxField compute_face_flux(const Field& rho, const CoefficientSet& coeffs,
                            const EquilibriumState& eq, const Grid1D& grid,
                            double t, FaceMean mean = FaceMean::geometric);

/// One explicit conservative update
///   feq_i w_i (rho_{n+1,i} - rho_{n,i}) / dt = F_{i+1/2} - F_{i-1/2},
/// where w_i are the trapezoidal cell measures; total mass of f = rho feq is
/// conserved to round-off by telescoping. Aborts when positivity is lost.
Field step_fv(const Field& rho_n, const CoefficientSet& coeffs,
              const EquilibriumState& eq, const Grid1D& grid, double dt,
              double t, FaceMean mean = FaceMean::geometric);

/// Stable explicit step for the scaled problem.
double default_fv_dt(const CoefficientSet& coeffs, const Grid1D& grid);

/// Marches f0 -> rho0, steps to T, returns the f-trajectory. Field levels
/// are stored every `store_stride` steps (plus the final level); the
/// per-step diagnostics (mass, free energy, dissipation, min density) are
/// always recorded per step.
Trajectory solve_direct(const Field& f0, const CoefficientSet& coeffs,
                        const Grid1D& grid, double dt, double T,
                        FaceMean mean = FaceMean::geometric, int store_stride = 1,
                        double mass_tol = 1e-8);

}  // namespace fpe

#endif
