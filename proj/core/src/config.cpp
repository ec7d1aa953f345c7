#include "fpe/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fpe {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ", key '" +
                              key + "': " + what);
}

double to_double(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail(line, key, "expected a number, got '" + v + "'");
  }
  if (pos != v.size()) fail(line, key, "trailing characters in number '" + v + "'");
  if (!std::isfinite(x)) fail(line, key, "value must be finite");
  return x;
}

int to_int(const std::string& v, int line, const std::string& key) {
  const double x = to_double(v, line, key);
  if (x != std::floor(x)) fail(line, key, "expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, key, "expected true or false, got '" + v + "'");
}

std::uint64_t to_u64(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    fail(line, key, "expected an unsigned integer, got '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::vector<double> to_params(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(item, line, key));
  return out;
}

Family to_family(const std::string& v, int line, const std::string& key) {
  try {
    return family_from_name(v);
  } catch (const std::exception& e) {
    fail(line, key, e.what());
  }
}

int expected_params(Family f, int n_cells) {
  switch (f) {
    case Family::constant: return 1;
    case Family::affine: return 2;
    case Family::cosine_bump: return 3;
    case Family::gaussian_bump: return 4;
    case Family::tabulated: return n_cells + 1;
  }
  return -1;
}

void check_profile(const ProfileSpec& spec, const std::string& key, int n_cells) {
  const int want = expected_params(spec.family, n_cells);
  if (static_cast<int>(spec.params.size()) != want) {
    throw std::invalid_argument("config key '" + key + "': family " +
                                family_name(spec.family) + " takes " +
                                std::to_string(want) + " parameters, got " +
                                std::to_string(spec.params.size()));
  }
  if (spec.family == Family::gaussian_bump && spec.params[3] == 0.0) {
    throw std::invalid_argument("config key '" + key + "': gaussian_bump width "
                                "parameter must be nonzero");
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_params(const std::vector<double>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += fmt(p[i]);
  }
  return out;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw std::invalid_argument("config key '" + key + "': " + what);
}

}  // namespace

std::string run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::fixed_point: return "fixed_point";
    case RunMode::fv: return "fv";
    case RunMode::both: return "both";
  }
  return "?";
}

RunMode run_mode_from_name(const std::string& name) {
  if (name == "fixed_point") return RunMode::fixed_point;
  if (name == "fv") return RunMode::fv;
  if (name == "both") return RunMode::both;
  throw std::invalid_argument("unknown run mode '" + name +
                              "' (expected fixed_point, fv or both)");
}

double stable_dt(const RunConfig& config) {
  const Grid1D grid = build_grid(config.x_min, config.x_max, config.n_cells);
  const CoefficientSet coeffs = sample_coefficients(config.coeffs, grid);
  double max_half_b2 = 0.0;
  for (double b : coeffs.b_profile) max_half_b2 = std::max(max_half_b2, 0.5 * b * b);
  return 0.2 * grid.dx * grid.dx * coeffs.min_diffusion() / max_half_b2;
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  bool dt_given = false;
  std::string section;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, s, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "grid" && section != "coefficients" && section != "initial" &&
          section != "solver" && section != "output") {
        fail(line, section, "unknown section");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, s, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) fail(line, key, "key before any section header");
    const std::string qkey = section + "." + key;

    if (section == "grid") {
      if (key == "x_min") c.x_min = to_double(value, line, qkey);
      else if (key == "x_max") c.x_max = to_double(value, line, qkey);
      else if (key == "n_cells") c.n_cells = to_int(value, line, qkey);
      else fail(line, qkey, "unknown key");
    } else if (section == "coefficients") {
      if (key == "diffusion_family") c.coeffs.diffusion.family = to_family(value, line, qkey);
      else if (key == "diffusion_params") c.coeffs.diffusion.params = to_params(value, line, qkey);
      else if (key == "potential_family") c.coeffs.potential.family = to_family(value, line, qkey);
      else if (key == "potential_params") c.coeffs.potential.params = to_params(value, line, qkey);
      else if (key == "b_family") c.coeffs.noise.family = to_family(value, line, qkey);
      else if (key == "b_params") c.coeffs.noise.params = to_params(value, line, qkey);
      else if (key == "b_time_modulation") {
        try {
          c.coeffs.b_modulation = modulation_from_name(value);
        } catch (const std::exception& e) {
          fail(line, qkey, e.what());
        }
      } else if (key == "b_time_params") c.coeffs.b_time_params = to_params(value, line, qkey);
      else if (key == "floor_diffusion") c.coeffs.floor_diffusion = to_double(value, line, qkey);
      else if (key == "floor_noise") c.coeffs.floor_noise = to_double(value, line, qkey);
      else fail(line, qkey, "unknown key");
    } else if (section == "initial") {
      if (key == "rho0_family") c.rho0.family = to_family(value, line, qkey);
      else if (key == "rho0_params") c.rho0.params = to_params(value, line, qkey);
      else fail(line, qkey, "unknown key");
    } else if (section == "solver") {
      if (key == "mode") {
        try {
          c.mode = run_mode_from_name(value);
        } catch (const std::exception& e) {
          fail(line, qkey, e.what());
        }
      } else if (key == "dt") {
        if (value == "auto") {
          dt_given = false;
        } else {
          c.dt = to_double(value, line, qkey);
          if (!(c.dt > 0.0)) fail(line, qkey, "dt must be positive");
          dt_given = true;
        }
      } else if (key == "T") {
        c.T = to_double(value, line, qkey);
        if (!(c.T > 0.0)) fail(line, qkey, "T must be positive");
      } else if (key == "theta") {
        c.theta = to_double(value, line, qkey);
        if (c.theta < 0.5 || c.theta > 1.0) fail(line, qkey, "theta must lie in [0.5, 1]");
      } else if (key == "fixed_point_tol") {
        c.fixed_point_tol = to_double(value, line, qkey);
        if (!(c.fixed_point_tol > 0.0)) fail(line, qkey, "tolerance must be positive");
      } else if (key == "mass_tol") {
        c.mass_tol = to_double(value, line, qkey);
        if (!(c.mass_tol > 0.0)) fail(line, qkey, "tolerance must be positive");
      } else if (key == "alpha") {
        c.alpha = to_double(value, line, qkey);
        if (!(c.alpha > 0.0) || !(c.alpha < 1.0)) fail(line, qkey, "alpha must lie in (0, 1)");
      } else if (key == "m_cap") {
        c.m_cap = to_double(value, line, qkey);
        if (!(c.m_cap > 0.0)) fail(line, qkey, "m_cap must be positive");
      } else if (key == "max_outer_iters") {
        c.max_outer_iters = to_int(value, line, qkey);
        if (c.max_outer_iters < 1) fail(line, qkey, "need at least one iteration");
      } else if (key == "paper_literal_G") {
        c.paper_literal_G = to_bool(value, line, qkey);
      } else if (key == "seed") {
        c.seed = to_u64(value, line, qkey);
      } else if (key == "face_mean") {
        if (value != "geometric" && value != "arithmetic") {
          fail(line, qkey, "expected geometric or arithmetic");
        }
        c.face_mean = value;
      } else if (key == "store_stride") {
        c.store_stride = to_int(value, line, qkey);
        if (c.store_stride < 1) fail(line, qkey, "stride must be at least 1");
      } else {
        fail(line, qkey, "unknown key");
      }
    } else {  // output
      if (key == "directory") c.directory = value;
      else if (key == "formats") {
        c.formats = split_list(value);
        if (c.formats.empty()) fail(line, qkey, "need at least one format");
        for (const auto& f : c.formats) {
          if (f != "csv" && f != "json") fail(line, qkey, "unknown format '" + f + "'");
        }
      } else fail(line, qkey, "unknown key");
    }
  }

  // Cross-field validation.
  require(c.x_max > c.x_min, "grid.x_max", "domain must have positive length");
  require(c.n_cells >= 8, "grid.n_cells", "need at least 8 cells");
  check_profile(c.coeffs.diffusion, "coefficients.diffusion_params", c.n_cells);
  check_profile(c.coeffs.potential, "coefficients.potential_params", c.n_cells);
  check_profile(c.coeffs.noise, "coefficients.b_params", c.n_cells);
  check_profile(c.rho0, "initial.rho0_params", c.n_cells);
  require(c.coeffs.floor_diffusion > 0.0, "coefficients.floor_diffusion",
          "floor must be positive");
  require(c.coeffs.floor_noise > 0.0, "coefficients.floor_noise",
          "floor must be positive");
  const std::size_t want_tp =
      c.coeffs.b_modulation == TimeModulation::none ? 0u
      : c.coeffs.b_modulation == TimeModulation::exponential_decay ? 1u : 2u;
  require(c.coeffs.b_time_params.size() == want_tp, "coefficients.b_time_params",
          "modulation " + modulation_name(c.coeffs.b_modulation) + " takes " +
              std::to_string(want_tp) + " parameters");
  if (c.coeffs.b_modulation == TimeModulation::sinusoidal) {
    require(std::abs(c.coeffs.b_time_params[0]) < 1.0, "coefficients.b_time_params",
            "sinusoidal amplitude must satisfy |p0| < 1");
  }
  if (!dt_given) c.dt = stable_dt(c);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  out += "[grid]\n";
  out += "x_min = " + fmt(c.x_min) + "\n";
  out += "x_max = " + fmt(c.x_max) + "\n";
  out += "n_cells = " + std::to_string(c.n_cells) + "\n\n";
  out += "[coefficients]\n";
  out += "diffusion_family = " + family_name(c.coeffs.diffusion.family) + "\n";
  out += "diffusion_params = " + fmt_params(c.coeffs.diffusion.params) + "\n";
  out += "potential_family = " + family_name(c.coeffs.potential.family) + "\n";
  out += "potential_params = " + fmt_params(c.coeffs.potential.params) + "\n";
  out += "b_family = " + family_name(c.coeffs.noise.family) + "\n";
  out += "b_params = " + fmt_params(c.coeffs.noise.params) + "\n";
  out += "b_time_modulation = " + modulation_name(c.coeffs.b_modulation) + "\n";
  if (!c.coeffs.b_time_params.empty()) {
    out += "b_time_params = " + fmt_params(c.coeffs.b_time_params) + "\n";
  }
  out += "floor_diffusion = " + fmt(c.coeffs.floor_diffusion) + "\n";
  out += "floor_noise = " + fmt(c.coeffs.floor_noise) + "\n\n";
  out += "[initial]\n";
  out += "rho0_family = " + family_name(c.rho0.family) + "\n";
  out += "rho0_params = " + fmt_params(c.rho0.params) + "\n\n";
  out += "[solver]\n";
  out += "mode = " + run_mode_name(c.mode) + "\n";
  out += "dt = " + fmt(c.dt) + "\n";
  out += "T = " + fmt(c.T) + "\n";
  out += "theta = " + fmt(c.theta) + "\n";
  out += "fixed_point_tol = " + fmt(c.fixed_point_tol) + "\n";
  out += "mass_tol = " + fmt(c.mass_tol) + "\n";
  out += "alpha = " + fmt(c.alpha) + "\n";
  out += "m_cap = " + fmt(c.m_cap) + "\n";
  out += "max_outer_iters = " + std::to_string(c.max_outer_iters) + "\n";
  out += std::string("paper_literal_G = ") + (c.paper_literal_G ? "true" : "false") + "\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  out += "face_mean = " + c.face_mean + "\n";
  out += "store_stride = " + std::to_string(c.store_stride) + "\n\n";
  out += "[output]\n";
  out += "directory = " + c.directory + "\n";
  std::string fl;
  for (std::size_t i = 0; i < c.formats.size(); ++i) {
    if (i) fl += ", ";
    fl += c.formats[i];
  }
  out += "formats = " + fl + "\n";
  return out;
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.directory = name;
  if (name == "equilibrium") {
    // rho0 = 1 with D = 1, phi = 0, b^2 = 2: exact steady state of both paths.
  } else if (name == "linear_reduction") {
    c.coeffs.potential = {Family::affine, {0.0, 1.0}};
    c.rho0 = {Family::cosine_bump, {1.0, 0.1, 1.0}};
    c.mode = RunMode::fixed_point;
  } else if (name == "generic_benchmark") {
    c.coeffs.diffusion = {Family::cosine_bump, {1.0, 0.2, 1.0}};
    c.rho0 = {Family::cosine_bump, {1.0, 0.1, 1.0}};
  } else if (name == "grain_bump") {
    c.coeffs.diffusion = {Family::gaussian_bump, {1.0, 0.5, 0.5, 0.15}};
    c.rho0 = {Family::cosine_bump, {1.0, 0.1, 2.0}};
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected equilibrium, linear_reduction, "
                                "generic_benchmark or grain_bump)");
  }
  c.dt = stable_dt(c);
  return c;
}

}  // namespace fpe
