#ifndef FPE_LINEAR_PARABOLIC_HPP
#define FPE_LINEAR_PARABOLIC_HPP

#include <span>

#include "fpe/field.hpp"
#include "fpe/problem.hpp"

namespace fpe {

/// Coefficients of the non-divergence operator
///   L u = a2 Delta u + a1 . grad u + a0 u
/// sampled on the grid nodes at one time level. Uniform parabolicity
/// a2 >= C_b^2 / 2 holds everywhere under the strong-positivity assumption.
struct OperatorCoefficients {
  std::vector<double> a2;
  std::vector<double> a1;
  std::vector<double> a0;
  double time = 0.0;
};

struct ForcingField {
  std::vector<double> g0_values;
  double time = 0.0;
};

struct AssemblyOptions {
  /// Skip every term carrying grad D (the a0 reaction term, the grad D part
  /// of the drift, the grad D term of the forcing, and the second term of
  /// the nonlinearity). With constant D these terms vanish identically, so
  /// skipping them must not change the solution.
  bool drop_grad_d_terms = false;
  /// Keep the feq factor on the quadratic nonlinearity as printed in the
  /// source formulation; the default omits it, consistent with the expanded
  /// non-divergence form of the equation.
  bool paper_literal_feq_in_nonlinearity = false;
};

OperatorCoefficients assemble_operator(const CoefficientSet& coeffs,
                                       const EquilibriumState& eq,
                                       std::span<const double> h0,
                                       const Grid1D& grid, double t,
                                       const AssemblyOptions& opts = {});

ForcingField compute_g0(const CoefficientSet& coeffs, const EquilibriumState& eq,
                        std::span<const double> h0, const Grid1D& grid, double t,
                        const AssemblyOptions& opts = {});

/// Quadratic nonlinearity G evaluated at a frozen deviation field.
std::vector<double> compute_nonlinearity(const Field& psi,
                                         const CoefficientSet& coeffs,
                                         const EquilibriumState& eq,
                                         const Grid1D& grid, double t,
                                         const AssemblyOptions& opts = {});

/// Applies the assembled operator to nodal values (ghost reflection at the
/// boundary). Used by consistency tests and by the explicit theta part.
std::vector<double> apply_operator(const OperatorCoefficients& op,
                                   std::span<const double> u, const Grid1D& grid);

/// One theta-scheme step: solves (I - theta dt L) u_{n+1} =
/// (I + (1-theta) dt L) u_n + dt rhs by tridiagonal elimination.
Field step_theta(const Field& xi_n, const OperatorCoefficients& op,
                 std::span<const double> rhs, double dt, double theta,
                 const Grid1D& grid);

/// Marches the linearized problem with the nonlinearity frozen at the given
/// deviation trajectory psi (psi(.,0) = 0): this is the discrete solution
/// map psi -> eta. Coefficients and forcing are staged at t_{n+theta}.
Trajectory solve_linear_parabolic(const Trajectory& psi, const Problem& problem,
                                  double dt, double T, double theta,
                                  const AssemblyOptions& opts = {});

}  // namespace fpe

#endif
