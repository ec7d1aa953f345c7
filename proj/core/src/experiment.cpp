#include "fpe/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fpe/fv.hpp"
#include "fpe/transforms.hpp"

namespace fpe {
namespace {

using ordered_json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

ordered_json checks_json(const std::vector<CheckEntry>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}});
  return arr;
}

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["version"] = m.version;
  j["wall_seconds"] = m.wall_seconds;
  j["files"] = m.files;
  j["checks"] = checks_json(m.checks);
  if (std::isfinite(m.cross_solver_discrepancy)) {
    j["cross_solver_discrepancy"] = m.cross_solver_discrepancy;
  } else {
    j["cross_solver_discrepancy"] = nullptr;
  }
  j["error"] = m.error;
  j["all_pass"] = m.all_pass();
  j["config_echo"] = m.config_echo;
  return j.dump(2) + "\n";
}

/// Attaches per-level records to a reconstructed density trajectory.
void fill_density_diagnostics(Trajectory& f_traj, const Trajectory& xi,
                              const Problem& problem) {
  f_traj.diagnostics.clear();
  for (int m = 0; m < f_traj.n_levels(); ++m) {
    double sup_xi = 0.0;
    for (double v : xi.values[m]) sup_xi = std::max(sup_xi, std::abs(v));
    f_traj.diagnostics.push_back(make_record(f_traj.level(m), problem, sup_xi));
  }
}

bool positivity_ok(const std::vector<DiagnosticsRecord>& records) {
  for (const auto& r : records) {
    if (!(r.min_density > 0.0)) return false;
  }
  return true;
}

double max_mass_error(const std::vector<DiagnosticsRecord>& records) {
  double e = 0.0;
  for (const auto& r : records) e = std::max(e, std::abs(r.mass - 1.0));
  return e;
}

bool energy_nonincreasing(const std::vector<DiagnosticsRecord>& records, double dt) {
  const double slack = 100.0 * dt * dt;
  for (std::size_t m = 1; m < records.size(); ++m) {
    if (records[m].free_energy > records[m - 1].free_energy + slack) return false;
  }
  return true;
}

struct Written {
  RunManifest* manifest;
  std::string dir;
  bool csv;
  bool json;
  std::string add(const std::string& name) {
    const std::string path = dir + "/" + name;
    manifest->files.push_back(path);
    return path;
  }
};

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double fit_dt(double T, double dt_max) {
  if (!(T > 0.0) || !(dt_max > 0.0)) {
    throw std::invalid_argument("fit_dt: T and dt_max must be positive");
  }
  const double steps = std::ceil(T / dt_max - 1e-9);
  return T / std::max(1.0, steps);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::string out = "t,x,value\n";
  for (int m = 0; m < traj.n_levels(); ++m) {
    const std::string t = format_double(traj.times[m]);
    for (int i = 0; i < traj.grid.n_nodes(); ++i) {
      out += t;
      out += ',';
      out += format_double(traj.grid.node_coords[i]);
      out += ',';
      out += format_double(traj.values[m][i]);
      out += '\n';
    }
  }
  write_text(path, out);
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
  std::string out = "t,mass,free_energy,dissipation_rate,min_density,sup_xi\n";
  for (const auto& r : records) {
    out += format_double(r.time);
    out += ',';
    out += format_double(r.mass);
    out += ',';
    out += format_double(r.free_energy);
    out += ',';
    out += format_double(r.dissipation_rate);
    out += ',';
    out += format_double(r.min_density);
    out += ',';
    out += format_double(r.sup_xi);
    out += '\n';
  }
  write_text(path, out);
}

std::string iteration_report_json(const IterationReport& report) {
  ordered_json j;
  j["iterates"] = report.iterates;
  j["sup_diffs"] = report.sup_diffs;
  j["ratios"] = report.ratios;
  j["converged"] = report.converged;
  j["kappa_T"] = report.kappa_T;
  return j.dump(2) + "\n";
}

std::string holder_report_json(const HolderReport& report) {
  ordered_json j;
  j["alpha"] = report.alpha;
  j["sup_norm"] = report.sup_norm;
  j["space_seminorm"] = report.space_seminorm;
  j["time_seminorm"] = report.time_seminorm;
  j["c_alpha_norm"] = report.c_alpha_norm;
  j["c2_alpha_norm"] = report.c2_alpha_norm;
  j["space_stride"] = report.space_stride;
  j["time_stride"] = report.time_stride;
  return j.dump(2) + "\n";
}

Trajectory random_zero_trajectory(const Grid1D& grid, double dt, double T,
                                  const CounterRng& rng, std::uint64_t case_index) {
  Trajectory traj = zero_trajectory(FieldKind::deviation_xi, grid, dt, T);
  const int n = grid.n_nodes();
  const std::uint64_t base = case_index * 64;
  double amp[4], rate[4];
  for (int k = 0; k < 4; ++k) {
    amp[k] = rng.uniform(base + 2 * k, -1.0, 1.0);
    rate[k] = rng.uniform(base + 2 * k + 1, 0.5 / T, 3.0 / T);
  }
  const double span = grid.x_max - grid.x_min;
  for (int m = 1; m < traj.n_levels(); ++m) {
    const double t = traj.times[m];
    for (int i = 0; i < n; ++i) {
      const double s = (grid.node_coords[i] - grid.x_min) / span;
      double v = 0.0;
      for (int k = 0; k < 4; ++k) {
        v += amp[k] * std::cos(k * M_PI * s) * (1.0 - std::exp(-rate[k] * t));
      }
      traj.values[m][i] = v;
    }
  }
  return traj;
}

bool RunManifest::all_pass() const {
  if (!error.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void RunManifest::add_check(const std::string& name, bool pass) {
  checks.push_back({name, pass});
}

RunManifest run_experiment(const RunConfig& config, const std::string& output_root) {
  const auto t0 = std::chrono::steady_clock::now();
  RunManifest m;
  m.config_echo = serialize_config(config);
  const std::string dir =
      (output_root.empty() ? std::string(".") : output_root) + "/" + config.directory;
  std::filesystem::create_directories(dir);
  const bool want_csv =
      std::find(config.formats.begin(), config.formats.end(), "csv") != config.formats.end();
  const bool want_json =
      std::find(config.formats.begin(), config.formats.end(), "json") != config.formats.end();
  Written w{&m, dir, want_csv, want_json};

  try {
    const Grid1D grid = build_grid(config.x_min, config.x_max, config.n_cells);
    const CoefficientSet coeffs = sample_coefficients(config.coeffs, grid);
    const std::vector<double> rho0_raw = sample_profile(config.rho0, grid);
    const Problem problem = make_problem(grid, coeffs, rho0_raw);
    const FaceMean mean = config.face_mean == "arithmetic" ? FaceMean::arithmetic
                                                           : FaceMean::geometric;

    Trajectory f_fixed_point;
    bool have_fp = false;
    if (config.mode == RunMode::fixed_point || config.mode == RunMode::both) {
      FixedPointConfig fpc;
      fpc.T = config.T;
      fpc.dt = fit_dt(config.T, config.dt);
      fpc.theta = config.theta;
      fpc.max_outer_iters = config.max_outer_iters;
      fpc.fixed_point_tol = config.fixed_point_tol;
      fpc.alpha = config.alpha;
      fpc.m_cap = config.m_cap;
      fpc.assembly.paper_literal_feq_in_nonlinearity = config.paper_literal_G;
      auto [xi, report] = iterate_to_fixed_point(problem, fpc);
      f_fixed_point = reconstruct_density(xi, problem);
      fill_density_diagnostics(f_fixed_point, xi, problem);
      have_fp = true;

      if (want_csv) {
        write_trajectory_csv(w.add("fixed_point_trajectory.csv"), f_fixed_point);
        write_diagnostics_csv(w.add("fixed_point_diagnostics.csv"),
                              f_fixed_point.diagnostics);
      }
      if (want_json) {
        write_text(w.add("iteration_report.json"), iteration_report_json(report));
        const int space_stride = std::max(1, grid.n_nodes() / 33);
        const int time_stride = std::max(1, xi.n_levels() / 33);
        const HolderReport h = holder_norms(xi, config.alpha, space_stride, time_stride);
        write_text(w.add("holder_report.json"), holder_report_json(h));
      }
      m.add_check("fixed_point_converged", report.converged);
      bool ratios_ok = true;
      for (double r : report.ratios) ratios_ok = ratios_ok && r < 1.0;
      m.add_check("fixed_point_ratios_below_one", ratios_ok);
      m.add_check("fixed_point_positivity", positivity_ok(f_fixed_point.diagnostics));
    }

    Trajectory f_fv;
    bool have_fv = false;
    if (config.mode == RunMode::fv || config.mode == RunMode::both) {
      const double dt_fv =
          fit_dt(config.T, std::min(config.dt, default_fv_dt(coeffs, grid)));
      std::vector<double> f0(grid.n_nodes());
      for (int i = 0; i < grid.n_nodes(); ++i) {
        f0[i] = problem.rho0[i] * problem.eq.feq_values[i];
      }
      f_fv = solve_direct(Field{FieldKind::density_f, f0, 0.0}, coeffs, grid, dt_fv,
                          config.T, mean, config.store_stride, config.mass_tol);
      have_fv = true;
      if (want_csv) {
        write_trajectory_csv(w.add("fv_trajectory.csv"), f_fv);
        write_diagnostics_csv(w.add("fv_diagnostics.csv"), f_fv.diagnostics);
      }
      m.add_check("fv_mass_conserved", max_mass_error(f_fv.diagnostics) <= 1e-10);
      m.add_check("fv_positivity", positivity_ok(f_fv.diagnostics));
      m.add_check("fv_energy_nonincreasing",
                  energy_nonincreasing(f_fv.diagnostics, dt_fv));
    }

    if (have_fp && have_fv) {
      double disc = 0.0;
      const auto& a = f_fixed_point.values.back();
      const auto& b = f_fv.values.back();
      for (std::size_t i = 0; i < a.size(); ++i) {
        disc = std::max(disc, std::abs(a[i] - b[i]));
      }
      m.cross_solver_discrepancy = disc;
      m.add_check("cross_solver_discrepancy_finite", std::isfinite(disc));
    }
    m.add_check("run_completed", true);
  } catch (const std::exception& e) {
    m.error = e.what();
    m.add_check("run_completed", false);
  }

  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string manifest_path = w.add("manifest.json");
  write_text(manifest_path, manifest_json(m));
  return m;
}

RunManifest run_lemma_sweep(const RunConfig& config, const std::string& output_root,
                            int n_decay_cases, int n_product_cases) {
  const auto t0 = std::chrono::steady_clock::now();
  RunManifest m;
  m.config_echo = serialize_config(config);
  const std::string dir =
      (output_root.empty() ? std::string(".") : output_root) + "/" + config.directory;
  std::filesystem::create_directories(dir);

  try {
    const Grid1D grid = build_grid(config.x_min, config.x_max, 16);
    const CounterRng rng{config.seed};
    const double horizons[3] = {0.05, 0.1, 0.2};

    int decay_failures = 0;
    double min_gradient_margin = std::numeric_limits<double>::infinity();
    double min_value_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_decay_cases; ++i) {
      const double T = horizons[i % 3];
      const Trajectory traj = random_zero_trajectory(grid, T / 12.0, T, rng,
                                                     static_cast<std::uint64_t>(i));
      const DecayCheck check = verify_decay_bounds(traj, config.alpha, T);
      if (!check.pass) ++decay_failures;
      min_gradient_margin = std::min(min_gradient_margin, check.gradient_margin);
      min_value_margin = std::min(min_value_margin, check.value_margin);
    }

    int product_failures = 0;
    double min_product_slack = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_product_cases; ++j) {
      const double T = horizons[j % 3];
      const Trajectory t1 = random_zero_trajectory(
          grid, T / 12.0, T, rng, static_cast<std::uint64_t>(1000 + 2 * j));
      const Trajectory t2 = random_zero_trajectory(
          grid, T / 12.0, T, rng, static_cast<std::uint64_t>(1001 + 2 * j));
      const ProductCheck check = product_norm_check(t1, t2, config.alpha);
      if (!check.pass) ++product_failures;
      min_product_slack = std::min(min_product_slack, check.rhs - check.lhs);
    }

    ordered_json j;
    j["decay_cases"] = n_decay_cases;
    j["decay_failures"] = decay_failures;
    j["min_gradient_margin"] = min_gradient_margin;
    j["min_value_margin"] = min_value_margin;
    j["product_cases"] = n_product_cases;
    j["product_failures"] = product_failures;
    j["min_product_slack"] = min_product_slack;
    const std::string path = dir + "/lemma_report.json";
    m.files.push_back(path);
    write_text(path, j.dump(2) + "\n");

    m.add_check("decay_all_pass", decay_failures == 0);
    m.add_check("product_all_pass", product_failures == 0);
    m.add_check("run_completed", true);
  } catch (const std::exception& e) {
    m.error = e.what();
    m.add_check("run_completed", false);
  }

  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string manifest_path = dir + "/manifest.json";
  m.files.push_back(manifest_path);
  write_text(manifest_path, manifest_json(m));
  return m;
}

RunManifest run_convergence(const RunConfig& config, const std::string& output_root,
                            int levels) {
  const auto t0 = std::chrono::steady_clock::now();
  RunManifest m;
  m.config_echo = serialize_config(config);
  const std::string dir =
      (output_root.empty() ? std::string(".") : output_root) + "/" + config.directory;
  std::filesystem::create_directories(dir);

  try {
    if (levels < 2) {
      throw std::invalid_argument("run_convergence: need at least 2 levels");
    }
    std::vector<int> ns;
    std::vector<double> dts, discs;
    for (int L = 0; L < levels; ++L) {
      const int n = config.n_cells << L;
      const Grid1D grid = build_grid(config.x_min, config.x_max, n);
      const CoefficientSet coeffs = sample_coefficients(config.coeffs, grid);
      const std::vector<double> rho0_raw = sample_profile(config.rho0, grid);
      const Problem problem = make_problem(grid, coeffs, rho0_raw);
      const double dt = fit_dt(
          config.T, std::min(config.dt / std::pow(4.0, L), default_fv_dt(coeffs, grid)));

      FixedPointConfig fpc;
      fpc.T = config.T;
      fpc.dt = dt;
      fpc.theta = config.theta;
      fpc.max_outer_iters = config.max_outer_iters;
      fpc.fixed_point_tol = config.fixed_point_tol;
      fpc.alpha = config.alpha;
      fpc.m_cap = config.m_cap;
      fpc.assembly.paper_literal_feq_in_nonlinearity = config.paper_literal_G;
      auto [xi, report] = iterate_to_fixed_point(problem, fpc);
      if (!report.converged) {
        throw std::runtime_error("run_convergence: fixed point did not converge at "
                                 "level " + std::to_string(L));
      }
      const Trajectory f_fp = reconstruct_density(xi, problem);

      std::vector<double> f0(grid.n_nodes());
      for (int i = 0; i < grid.n_nodes(); ++i) {
        f0[i] = problem.rho0[i] * problem.eq.feq_values[i];
      }
      const int stride = std::max(1, static_cast<int>(std::llround(config.T / dt)));
      const Trajectory f_fv =
          solve_direct(Field{FieldKind::density_f, f0, 0.0}, coeffs, grid, dt,
                       config.T, FaceMean::geometric, stride, config.mass_tol);

      double disc = 0.0;
      const auto& a = f_fp.values.back();
      const auto& b = f_fv.values.back();
      for (std::size_t i = 0; i < a.size(); ++i) {
        disc = std::max(disc, std::abs(a[i] - b[i]));
      }
      ns.push_back(n);
      dts.push_back(dt);
      discs.push_back(disc);
    }

    std::string csv = "level,n_cells,dt,discrepancy,order\n";
    double last_order = 0.0;
    bool decreasing = true;
    for (int L = 0; L < levels; ++L) {
      double order = 0.0;
      if (L > 0) {
        decreasing = decreasing && discs[L] < discs[L - 1];
        order = std::log2(discs[L - 1] / discs[L]);
        last_order = order;
      }
      csv += std::to_string(L) + "," + std::to_string(ns[L]) + "," +
             format_double(dts[L]) + "," + format_double(discs[L]) + "," +
             format_double(order) + "\n";
    }
    const std::string path = dir + "/convergence.csv";
    m.files.push_back(path);
    write_text(path, csv);

    m.add_check("discrepancy_decreasing", decreasing);
    m.add_check("order_at_least_1.8", last_order >= 1.8);
    m.add_check("run_completed", true);
  } catch (const std::exception& e) {
    m.error = e.what();
    m.add_check("run_completed", false);
  }

  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string manifest_path = dir + "/manifest.json";
  m.files.push_back(manifest_path);
  write_text(manifest_path, manifest_json(m));
  return m;
}

}  // namespace fpe
