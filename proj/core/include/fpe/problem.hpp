#ifndef FPE_PROBLEM_HPP
#define FPE_PROBLEM_HPP

#include <span>
#include <vector>

#include "fpe/coefficients.hpp"
#include "fpe/grid.hpp"

namespace fpe {

/// Fully assembled problem data: grid, sampled coefficients, equilibrium,
/// positive initial scaled density rho0 and its log state h0 = D log rho0.
struct Problem {
  Grid1D grid;
  CoefficientSet coeffs;
  EquilibriumState eq;
  std::vector<double> rho0;
  std::vector<double> h0;
};

/// Builds a Problem from sampled data. rho0 is rescaled to make the density
/// f0 = rho0 * feq carry unit mass.
Problem make_problem(const Grid1D& grid, const CoefficientSet& coeffs,
                     std::span<const double> rho0_raw, double norm_tol = 1e-10);

}  // namespace fpe

#endif
