#ifndef FPE_COEFFICIENTS_HPP
#define FPE_COEFFICIENTS_HPP

#include <span>
#include <string>
#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

/// Built-in spatial profile families. All built-ins are smooth, which is how
/// the Hoelder-regularity assumption on the data is honored; tabulated data
/// is accepted as-is and the smoothness is the caller's responsibility.
enum class Family { constant, affine, cosine_bump, gaussian_bump, tabulated };

/// Parameter conventions (with s = (x - x_min)/(x_max - x_min)):
///   constant:      value = p0
///   affine:        value = p0 + p1 * x
///   cosine_bump:   value = p0 + p1 * cos(p2 * pi * s)
///   gaussian_bump: value = p0 + p1 * exp(-((x - p2)/p3)^2)
///   tabulated:     params are the node values themselves (n_cells + 1 of them)
struct ProfileSpec {
  Family family = Family::constant;
  std::vector<double> params;
};

enum class TimeModulation { none, exponential_decay, sinusoidal };

/// Problem data b(x,t), D(x), phi(x). b is a spatial profile times a scalar
/// time modulation:
///   none:              m(t) = 1
///   exponential_decay: m(t) = exp(-p0 * t)
///   sinusoidal:        m(t) = 1 + p0 * sin(2 pi p1 t), requires |p0| < 1
struct CoefficientSpec {
  ProfileSpec diffusion;          // D(x)
  ProfileSpec potential;          // phi(x)
  ProfileSpec noise;              // spatial profile of b(x,t)
  TimeModulation b_modulation = TimeModulation::none;
  std::vector<double> b_time_params;
  double floor_diffusion = 1e-10;  // C_D in the strong-positivity assumption
  double floor_noise = 1e-10;      // C_b
};

/// Sampled coefficients on a grid. D and the spatial b profile are positive
/// at every node (enforced at construction against the declared floors).
struct CoefficientSet {
  std::vector<double> diffusion;   // D at nodes
  std::vector<double> potential;   // phi at nodes
  std::vector<double> b_profile;   // b(x, 0) spatial profile at nodes
  TimeModulation b_modulation = TimeModulation::none;
  std::vector<double> b_time_params;
  double floor_diffusion = 0.0;
  double floor_noise = 0.0;

  double b_time_factor(double t) const;
  /// b(x,t)^2 at every node.
  std::vector<double> b_squared(double t) const;
  double min_diffusion() const;
};

std::vector<double> sample_profile(const ProfileSpec& spec, const Grid1D& grid);

CoefficientSet sample_coefficients(const CoefficientSpec& spec, const Grid1D& grid);

/// Equilibrium density exp(-(phi - c_norm)/D) with c_norm fixed so the
/// trapezoidal mass is 1.
struct EquilibriumState {
  double c_norm = 0.0;
  std::vector<double> feq_values;
};

/// Bisection on the normalization constant; the normalization integral is
/// strictly increasing in the constant, so the root is unique.
EquilibriumState compute_equilibrium(std::span<const double> diffusion,
                                     std::span<const double> potential,
                                     const Grid1D& grid, double norm_tol = 1e-10);

struct CompatibilityResult {
  bool ok = false;
  double residual_left = 0.0;
  double residual_right = 0.0;
};

/// Checks the no-flux compatibility of the initial data: the one-sided
/// second-order boundary derivative of D log(rho0) must vanish at both ends.
CompatibilityResult check_compatibility(std::span<const double> rho0,
                                        std::span<const double> diffusion,
                                        const Grid1D& grid, double tol);

std::string family_name(Family f);
Family family_from_name(const std::string& name);
std::string modulation_name(TimeModulation m);
TimeModulation modulation_from_name(const std::string& name);

}  // namespace fpe

#endif
