#ifndef FPE_FIXED_POINT_HPP
#define FPE_FIXED_POINT_HPP

#include <utility>

#include "fpe/linear_parabolic.hpp"

namespace fpe {

struct FixedPointConfig {
  double T = 0.05;
  double dt = 1e-4;
  double theta = 1.0;
  int max_outer_iters = 30;
  double fixed_point_tol = 1e-10;  // sup norm over space-time
  double alpha = 0.5;              // Hoelder exponent used in reports
  double m_cap = 100.0;            // divergence guard on the iterates
  AssemblyOptions assembly;
};

struct IterationReport {
  int iterates = 0;
  std::vector<double> sup_diffs;  // |xi^{k+1} - xi^k|_inf per outer iterate
  std::vector<double> ratios;     // successive-difference quotients
  bool converged = false;
  double kappa_T = 0.0;
  bool compatibility_ok = true;   // warn-only precondition
  double compatibility_residual_left = 0.0;
  double compatibility_residual_right = 0.0;
};

/// eta = A psi: one application of the discrete solution map.
Trajectory apply_solution_map(const Trajectory& psi, const Problem& problem,
                              const FixedPointConfig& config);

/// Time-interval function controlling the contraction factor:
/// (T^{(1+a)/2} + T^{1/2})^2 + (T^{(1+a)/2} + T^{1/2})(T + T^{1-a/2}).
/// Increasing in T, vanishing as T -> 0.
double kappa(double T, double alpha);

/// Picard iteration xi^{k+1} = A xi^k from the given initial iterate (zero
/// trajectory by default). Aborts with a diagnostic when the iterate's sup
/// norm exceeds m_cap.
std::pair<Trajectory, IterationReport> iterate_to_fixed_point(
    const Problem& problem, const FixedPointConfig& config,
    const Trajectory* initial_iterate = nullptr);

/// |A psi1 - A psi2|_inf / |psi1 - psi2|_inf, zero when the inputs coincide.
double estimate_contraction_ratio(const Trajectory& psi1, const Trajectory& psi2,
                                  const Problem& problem,
                                  const FixedPointConfig& config);

/// Density trajectory f = exp((h0 + xi)/D) feq reconstructed level by level.
Trajectory reconstruct_density(const Trajectory& xi, const Problem& problem);

}  // namespace fpe

#endif
