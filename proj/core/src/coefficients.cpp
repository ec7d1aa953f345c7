#include "fpe/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpe {

namespace {

std::size_t expected_params(Family f) {
  switch (f) {
    case Family::constant: return 1;
    case Family::affine: return 2;
    case Family::cosine_bump: return 3;
    case Family::gaussian_bump: return 4;
    case Family::tabulated: return 0;  // checked against the grid instead
  }
  return 0;
}

}  // namespace

std::vector<double> sample_profile(const ProfileSpec& spec, const Grid1D& grid) {
  const int n = grid.n_nodes();
  if (spec.family == Family::tabulated) {
    if (static_cast<int>(spec.params.size()) != n) {
      throw std::invalid_argument("sample_profile: tabulated family needs " +
                                  std::to_string(n) + " node values, got " +
                                  std::to_string(spec.params.size()));
    }
    return spec.params;
  }
  if (spec.params.size() != expected_params(spec.family)) {
    throw std::invalid_argument("sample_profile: family '" + family_name(spec.family) +
                                "' expects " + std::to_string(expected_params(spec.family)) +
                                " parameters, got " + std::to_string(spec.params.size()));
  }
  const auto& p = spec.params;
  std::vector<double> out(n);
  const double span = grid.x_max - grid.x_min;
  for (int i = 0; i < n; ++i) {
    const double x = grid.node_coords[i];
    switch (spec.family) {
      case Family::constant:
        out[i] = p[0];
        break;
      case Family::affine:
        out[i] = p[0] + p[1] * x;
        break;
      case Family::cosine_bump: {
        const double s = (x - grid.x_min) / span;
        out[i] = p[0] + p[1] * std::cos(p[2] * std::numbers::pi * s);
        break;
      }
      case Family::gaussian_bump: {
        const double z = (x - p[2]) / p[3];
        out[i] = p[0] + p[1] * std::exp(-z * z);
        break;
      }
      case Family::tabulated:
        break;  // handled above
    }
  }
  return out;
}

double CoefficientSet::b_time_factor(double t) const {
  switch (b_modulation) {
    case TimeModulation::none:
      return 1.0;
    case TimeModulation::exponential_decay:
      return std::exp(-b_time_params.at(0) * t);
    case TimeModulation::sinusoidal:
      return 1.0 + b_time_params.at(0) *
                       std::sin(2.0 * std::numbers::pi * b_time_params.at(1) * t);
  }
  return 1.0;
}

std::vector<double> CoefficientSet::b_squared(double t) const {
  const double m = b_time_factor(t);
  if (!(m > 0.0)) {
    throw std::domain_error("CoefficientSet: time modulation factor " +
                            std::to_string(m) + " is not positive at t = " +
                            std::to_string(t));
  }
  std::vector<double> out(b_profile.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double b = b_profile[i] * m;
    out[i] = b * b;
  }
  return out;
}

double CoefficientSet::min_diffusion() const {
  return *std::min_element(diffusion.begin(), diffusion.end());
}

CoefficientSet sample_coefficients(const CoefficientSpec& spec, const Grid1D& grid) {
  CoefficientSet set;
  set.diffusion = sample_profile(spec.diffusion, grid);
  set.potential = sample_profile(spec.potential, grid);
  set.b_profile = sample_profile(spec.noise, grid);
  set.b_modulation = spec.b_modulation;
  set.b_time_params = spec.b_time_params;
  set.floor_diffusion = spec.floor_diffusion;
  set.floor_noise = spec.floor_noise;

  if (spec.b_modulation == TimeModulation::exponential_decay &&
      spec.b_time_params.size() != 1) {
    throw std::invalid_argument("sample_coefficients: exponential_decay needs 1 parameter");
  }
  if (spec.b_modulation == TimeModulation::sinusoidal) {
    if (spec.b_time_params.size() != 2) {
      throw std::invalid_argument("sample_coefficients: sinusoidal needs 2 parameters");
    }
    if (!(std::abs(spec.b_time_params[0]) < 1.0)) {
      throw std::invalid_argument(
          "sample_coefficients: sinusoidal amplitude must satisfy |amplitude| < 1");
    }
  }

  for (int i = 0; i < grid.n_nodes(); ++i) {
    if (!(set.diffusion[i] >= spec.floor_diffusion) || !std::isfinite(set.diffusion[i])) {
      throw std::invalid_argument("sample_coefficients: D violates the positivity floor at node " +
                                  std::to_string(i) + " (value " +
                                  std::to_string(set.diffusion[i]) + ")");
    }
    if (!(set.b_profile[i] >= spec.floor_noise) || !std::isfinite(set.b_profile[i])) {
      throw std::invalid_argument("sample_coefficients: b violates the positivity floor at node " +
                                  std::to_string(i) + " (value " +
                                  std::to_string(set.b_profile[i]) + ")");
    }
    if (!std::isfinite(set.potential[i])) {
      throw std::invalid_argument("sample_coefficients: phi is not finite at node " +
                                  std::to_string(i));
    }
  }
  return set;
}

EquilibriumState compute_equilibrium(std::span<const double> diffusion,
                                     std::span<const double> potential,
                                     const Grid1D& grid, double norm_tol) {
  if (!(norm_tol > 0.0)) {
    throw std::invalid_argument("compute_equilibrium: norm_tol must be positive");
  }
  const int n = grid.n_nodes();
  for (int i = 0; i < n; ++i) {
    if (!(diffusion[i] > 0.0)) {
      throw std::domain_error("compute_equilibrium: D must be positive (node " +
                              std::to_string(i) + ")");
    }
  }

  std::vector<double> values(n);
  auto mass = [&](double c) {
    for (int i = 0; i < n; ++i) {
      values[i] = std::exp(-(potential[i] - c) / diffusion[i]);
    }
    return integrate(values, grid);
  };

  const double phi_min = *std::min_element(potential.begin(), potential.end());
  const double phi_max = *std::max_element(potential.begin(), potential.end());
  const double d_max = *std::max_element(diffusion.begin(), diffusion.end());

  double lo = phi_min - 20.0 * d_max;
  double hi = phi_max + 20.0 * d_max;
  double width = hi - lo;
  int widen = 0;
  while (mass(lo) > 1.0 && widen < 60) {
    lo -= width;
    width *= 2.0;
    ++widen;
  }
  widen = 0;
  while (mass(hi) < 1.0 && widen < 60) {
    hi += width;
    width *= 2.0;
    ++widen;
  }
  if (mass(lo) > 1.0 || mass(hi) < 1.0) {
    throw std::runtime_error("compute_equilibrium: failed to bracket the normalization "
                             "constant; last bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
  }

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    const double m = mass(mid);
    if (std::abs(m - 1.0) <= norm_tol) break;
    (m < 1.0 ? lo : hi) = mid;
  }
  if (std::abs(mass(mid) - 1.0) > norm_tol) {
    throw std::runtime_error("compute_equilibrium: bisection did not reach the requested "
                             "tolerance; last bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
  }

  EquilibriumState eq;
  eq.c_norm = mid;
  eq.feq_values = values;  // values hold the last (accepted) evaluation
  return eq;
}

CompatibilityResult check_compatibility(std::span<const double> rho0,
                                        std::span<const double> diffusion,
                                        const Grid1D& grid, double tol) {
  const int n = grid.n_nodes();
  std::vector<double> h0(n);
  for (int i = 0; i < n; ++i) {
    if (!(rho0[i] > 0.0)) {
      throw std::domain_error("check_compatibility: rho0 must be positive (node " +
                              std::to_string(i) + ")");
    }
    h0[i] = diffusion[i] * std::log(rho0[i]);
  }
  CompatibilityResult r;
  r.residual_left = one_sided_derivative_left(h0, grid);
  r.residual_right = one_sided_derivative_right(h0, grid);
  r.ok = std::abs(r.residual_left) <= tol && std::abs(r.residual_right) <= tol;
  return r;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::constant: return "constant";
    case Family::affine: return "affine";
    case Family::cosine_bump: return "cosine_bump";
    case Family::gaussian_bump: return "gaussian_bump";
    case Family::tabulated: return "tabulated";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "constant") return Family::constant;
  if (name == "affine") return Family::affine;
  if (name == "cosine_bump") return Family::cosine_bump;
  if (name == "gaussian_bump") return Family::gaussian_bump;
  if (name == "tabulated") return Family::tabulated;
  throw std::invalid_argument("unknown coefficient family '" + name + "'");
}

std::string modulation_name(TimeModulation m) {
  switch (m) {
    case TimeModulation::none: return "none";
    case TimeModulation::exponential_decay: return "exponential_decay";
    case TimeModulation::sinusoidal: return "sinusoidal";
  }
  return "?";
}

TimeModulation modulation_from_name(const std::string& name) {
  if (name == "none") return TimeModulation::none;
  if (name == "exponential_decay") return TimeModulation::exponential_decay;
  if (name == "sinusoidal") return TimeModulation::sinusoidal;
  throw std::invalid_argument("unknown time modulation '" + name + "'");
}

}  // namespace fpe
