#ifndef FPE_DIAGNOSTICS_HPP
#define FPE_DIAGNOSTICS_HPP

#include <span>

#include "fpe/field.hpp"
#include "fpe/problem.hpp"

namespace fpe {

/// Free energy of a density: integral of D f (log f - 1) + f phi.
double free_energy_f(std::span<const double> f, std::span<const double> diffusion,
                     std::span<const double> potential, const Grid1D& grid);

/// Equivalent forms on the transformed representations of the same state.
double free_energy_rho(std::span<const double> rho, std::span<const double> diffusion,
                       const EquilibriumState& eq, const Grid1D& grid);
double free_energy_h(std::span<const double> h, std::span<const double> diffusion,
                     const EquilibriumState& eq, const Grid1D& grid);
double free_energy_xi(std::span<const double> xi, std::span<const double> h0,
                      std::span<const double> diffusion, const EquilibriumState& eq,
                      const Grid1D& grid);

/// Right side of the energy law (nonpositive): minus the integral of
/// (b^2/2D) |grad(phi + D log f)|^2 f, node-centered gradients.
double dissipation_rate(std::span<const double> f, const CoefficientSet& coeffs,
                        const Grid1D& grid, double t);

/// Same quantity on the scaled state with face-centered gradients, matching
/// the finite-volume flux stencil exactly.
double dissipation_rate_faces(std::span<const double> rho,
                              const CoefficientSet& coeffs,
                              const EquilibriumState& eq, const Grid1D& grid,
                              double t);

/// Discrete parabolic Hoelder norms of a trajectory (brute-force pair scans;
/// strides > 1 subsample the scans and are reported back).
struct HolderReport {
  double alpha = 0.0;
  double sup_norm = 0.0;
  double space_seminorm = 0.0;
  double time_seminorm = 0.0;
  double c_alpha_norm = 0.0;    // sup + space + time seminorms
  double c2_alpha_norm = 0.0;   // all nine terms of the C^{2+a,1+a/2} composite
  int space_stride = 1;
  int time_stride = 1;
};

HolderReport holder_norms(const Trajectory& traj, double alpha,
                          int space_stride = 1, int time_stride = 1);

/// Decay inequalities for trajectories vanishing at t = 0:
///   |grad theta|_{C^{a,a/2}} <= 3 (T^{(1+a)/2} + T^{1/2}) |theta|_{C^{2+a,1+a/2}}
///   |theta|_{C^{a,a/2}}      <= 3 (T + T^{1-a/2})          |theta|_{C^{2+a,1+a/2}}
struct DecayCheck {
  bool pass = false;
  double gradient_lhs = 0.0, gradient_rhs = 0.0, gradient_margin = 0.0;
  double value_lhs = 0.0, value_rhs = 0.0, value_margin = 0.0;
};

DecayCheck verify_decay_bounds(const Trajectory& traj, double alpha, double T);

/// Submultiplicativity |theta1 theta2|_{C^{a,a/2}} <= |theta1| |theta2|.
struct ProductCheck {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

ProductCheck product_norm_check(const Trajectory& t1, const Trajectory& t2,
                                double alpha);

/// Full per-level record for a density field.
DiagnosticsRecord make_record(const Field& f, const Problem& problem, double sup_xi);

}  // namespace fpe

#endif
