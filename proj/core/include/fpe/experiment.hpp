#ifndef FPE_EXPERIMENT_HPP
#define FPE_EXPERIMENT_HPP

#include <limits>
#include <string>
#include <vector>

#include "fpe/config.hpp"
#include "fpe/diagnostics.hpp"
#include "fpe/field.hpp"
#include "fpe/fixed_point.hpp"
#include "fpe/rng.hpp"

namespace fpe {

/// Shortest-round-trip-safe formatting (17 significant digits).
std::string format_double(double x);

/// Largest step <= dt_max that divides T into an integer number of steps.
double fit_dt(double T, double dt_max);

/// Long-form trajectory CSV (header t,x,value) and diagnostics CSV (header
/// t,mass,free_energy,dissipation_rate,min_density,sup_xi).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);

std::string iteration_report_json(const IterationReport& report);
std::string holder_report_json(const HolderReport& report);

/// Smooth random deviation trajectory with zero initial slice: a few cosine
/// modes in space, saturating-exponential envelopes in time. Deterministic in
/// (rng.seed, case_index).
Trajectory random_zero_trajectory(const Grid1D& grid, double dt, double T,
                                  const CounterRng& rng, std::uint64_t case_index);

struct CheckEntry {
  std::string name;
  bool pass = false;
};

struct RunManifest {
  std::string config_echo;
  std::string version = "0.1.0";
  double wall_seconds = 0.0;
  std::vector<std::string> files;
  std::vector<CheckEntry> checks;
  double cross_solver_discrepancy = std::numeric_limits<double>::quiet_NaN();
  std::string error;  // nonempty when a module error aborted the run

  bool all_pass() const;
  void add_check(const std::string& name, bool pass);
};

/// Executes the configured mode, writes all artifacts under
/// output_root/config.directory, and returns the manifest (also written
/// there as manifest.json). Module errors are caught and recorded.
RunManifest run_experiment(const RunConfig& config, const std::string& output_root);

/// Randomized decay-bound and product-norm sweeps on a small internal mesh.
RunManifest run_lemma_sweep(const RunConfig& config, const std::string& output_root,
                            int n_decay_cases = 150, int n_product_cases = 50);

/// Cross-solver discrepancy under simultaneous refinement dx -> dx/2,
/// dt -> dt/4 over the given number of levels (>= 2).
RunManifest run_convergence(const RunConfig& config, const std::string& output_root,
                            int levels);

}  // namespace fpe

#endif
