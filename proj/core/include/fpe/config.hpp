#ifndef FPE_CONFIG_HPP
#define FPE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fpe/coefficients.hpp"

namespace fpe {

enum class RunMode { fixed_point, fv, both };

std::string run_mode_name(RunMode m);
RunMode run_mode_from_name(const std::string& name);

/// Fully validated run description, the parsed form of the flat sectioned
/// config format (see parse_config). dt = 0 means "auto": the explicit
/// stability step 0.2 dx^2 min(D) / max(b^2/2), resolved at parse time.
struct RunConfig {
  // [grid]
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 100;

  // [coefficients]: defaults D = 1, phi = 0, b^2 = 2, no time modulation
  CoefficientSpec coeffs{{Family::constant, {1.0}},
                         {Family::constant, {0.0}},
                         {Family::constant, {1.4142135623730951}}};

  // [initial]
  ProfileSpec rho0{Family::constant, {1.0}};

  // [solver]
  RunMode mode = RunMode::both;
  double dt = 0.0;  // resolved: always positive after parse_config/preset
  double T = 0.05;
  double theta = 1.0;
  double fixed_point_tol = 1e-10;
  double mass_tol = 1e-8;
  double alpha = 0.5;
  double m_cap = 100.0;
  int max_outer_iters = 30;
  bool paper_literal_G = false;
  std::uint64_t seed = 42;
  std::string face_mean = "geometric";  // or "arithmetic"
  int store_stride = 1;

  // [output]
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

/// Parses the strict INI-style document:
///   - sections [grid], [coefficients], [initial], [solver], [output]
///   - `key = value` lines, `#`/`;` comments, blank lines
///   - unknown sections or keys, type mismatches and range violations are
///     errors carrying the line number and key name.
RunConfig parse_config(const std::string& text);

/// Inverse of parse_config up to formatting: parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Named reproducible scenarios: equilibrium, linear_reduction,
/// generic_benchmark, grain_bump.
RunConfig preset(const std::string& name);

/// The auto dt rule applied to sampled data.
double stable_dt(const RunConfig& config);

}  // namespace fpe

#endif
