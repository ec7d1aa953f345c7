#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fpe/experiment.hpp"

using namespace fpe;

namespace {

const char* kMinimalDoc =
    "[grid]\n"
    "x_min = 0\n"
    "x_max = 1\n"
    "n_cells = 50\n";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool config_equal(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

std::string temp_root(const std::string& tag) {
  const std::string dir = std::filesystem::temp_directory_path() /
                          ("fpe_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal document fills defaults, dt from the stability rule") {
  const RunConfig c = parse_config(kMinimalDoc);
  CHECK(c.n_cells == 50);
  const double dx = 1.0 / 50.0;
  // D = 1 and b^2 = 2 by default, so dt = 0.2 dx^2 min(D)/max(b^2/2).
  CHECK(c.dt == doctest::Approx(0.2 * dx * dx).epsilon(1e-12));
  CHECK(c.theta == 1.0);
  CHECK(c.mode == RunMode::both);
}

TEST_CASE("strict parsing: range and unknown-key errors carry context") {
  SUBCASE("theta out of range names the key") {
    const std::string doc = std::string(kMinimalDoc) + "[solver]\ntheta = 1.5\n";
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("solver.theta"),
                         std::invalid_argument);
  }
  SUBCASE("misspelled key is rejected") {
    const std::string doc = std::string(kMinimalDoc) + "[solver]\nthetaa = 1\n";
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("thetaa"),
                         std::invalid_argument);
  }
  SUBCASE("unknown section is rejected") {
    CHECK_THROWS_AS(parse_config("[solvers]\ntheta = 1\n"), std::invalid_argument);
  }
  SUBCASE("type mismatch is rejected") {
    const std::string doc = std::string(kMinimalDoc) + "[solver]\nT = soon\n";
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("solver.T"),
                         std::invalid_argument);
  }
  SUBCASE("wrong parameter count is rejected") {
    const std::string doc =
        "[grid]\nn_cells = 50\n[coefficients]\ndiffusion_family = affine\n"
        "diffusion_params = 1\n";
    CHECK_THROWS_AS(parse_config(doc), std::invalid_argument);
  }
}

TEST_CASE("config round trip is the identity") {
  for (const char* name :
       {"equilibrium", "linear_reduction", "generic_benchmark", "grain_bump"}) {
    const RunConfig c = preset(name);
    const RunConfig back = parse_config(serialize_config(c));
    CHECK(config_equal(c, back));
    // Twice more: serialize-parse must be stable, not just idempotent once.
    CHECK(config_equal(back, parse_config(serialize_config(back))));
  }
  CHECK_THROWS_AS(preset("nonesuch"), std::invalid_argument);
}

TEST_CASE("presets match their definitions") {
  const RunConfig lin = preset("linear_reduction");
  CHECK(lin.coeffs.diffusion.family == Family::constant);
  CHECK(lin.coeffs.diffusion.params[0] == 1.0);
  CHECK(lin.coeffs.potential.family == Family::affine);
  CHECK(lin.coeffs.potential.params[1] == 1.0);

  const RunConfig gen = preset("generic_benchmark");
  CHECK(gen.coeffs.diffusion.family == Family::cosine_bump);
  CHECK(gen.coeffs.diffusion.params[1] == doctest::Approx(0.2));
  CHECK(gen.rho0.family == Family::cosine_bump);
  CHECK(gen.T == doctest::Approx(0.05));

  const RunConfig grain = preset("grain_bump");
  CHECK(grain.coeffs.diffusion.family == Family::gaussian_bump);
}

TEST_CASE("fv mode on the equilibrium preset is stationary") {
  const std::string root = temp_root("fv_eq");
  RunConfig c = preset("equilibrium");
  c.mode = RunMode::fv;
  c.T = 0.01;
  c.store_stride = 1 << 20;
  const RunManifest m = run_experiment(c, root);
  REQUIRE(m.error.empty());
  CHECK(m.all_pass());

  const std::string diag = slurp(root + "/equilibrium/fv_diagnostics.csv");
  std::istringstream lines(diag);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,mass,free_energy,dissipation_rate,min_density,sup_xi");
  double F0 = 0.0;
  bool first = true;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string tok;
    std::getline(row, tok, ',');
    std::getline(row, tok, ',');
    std::getline(row, tok, ',');
    const double F = std::stod(tok);
    std::getline(row, tok, ',');
    const double diss = std::stod(tok);
    if (first) {
      F0 = F;
      first = false;
    }
    CHECK(std::abs(F - F0) <= 1e-10);
    CHECK(std::abs(diss) <= 1e-10);
  }
  std::filesystem::remove_all(root);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  const std::string root_a = temp_root("det_a");
  const std::string root_b = temp_root("det_b");
  RunConfig c = preset("generic_benchmark");
  c.n_cells = 32;
  c.dt = stable_dt(c);
  c.T = 0.01;
  c.store_stride = 50;
  const RunManifest ma = run_experiment(c, root_a);
  const RunManifest mb = run_experiment(c, root_b);
  REQUIRE(ma.error.empty());
  REQUIRE(mb.error.empty());
  for (const char* name :
       {"fixed_point_trajectory.csv", "fixed_point_diagnostics.csv",
        "fv_trajectory.csv", "fv_diagnostics.csv", "iteration_report.json",
        "holder_report.json"}) {
    CHECK(slurp(root_a + "/generic_benchmark/" + name) ==
          slurp(root_b + "/generic_benchmark/" + name));
  }
  std::filesystem::remove_all(root_a);
  std::filesystem::remove_all(root_b);
}

TEST_CASE("manifest lists every written file with explicit check booleans") {
  const std::string root = temp_root("manifest");
  RunConfig c = preset("generic_benchmark");
  c.n_cells = 32;
  c.dt = stable_dt(c);
  c.T = 0.01;
  c.store_stride = 1 << 20;
  const RunManifest m = run_experiment(c, root);
  REQUIRE(m.error.empty());
  CHECK(!m.files.empty());
  for (const auto& path : m.files) CHECK(std::filesystem::exists(path));
  CHECK(!m.checks.empty());
  bool found_mass = false;
  for (const auto& check : m.checks) found_mass |= check.name == "fv_mass_conserved";
  CHECK(found_mass);
  // The cross-solver discrepancy is recorded in "both" mode.
  CHECK(std::isfinite(m.cross_solver_discrepancy));
  std::filesystem::remove_all(root);
}

TEST_CASE("divergence-guard abort is recorded in the manifest") {
  const std::string root = temp_root("abort");
  RunConfig c = preset("generic_benchmark");
  c.n_cells = 32;
  c.dt = stable_dt(c);
  c.T = 0.01;
  c.mode = RunMode::fixed_point;
  c.m_cap = 1e-9;
  const RunManifest m = run_experiment(c, root);
  CHECK(!m.error.empty());
  CHECK(m.error.find("smaller T") != std::string::npos);
  CHECK(!m.all_pass());
  CHECK(std::filesystem::exists(root + "/generic_benchmark/manifest.json"));
  std::filesystem::remove_all(root);
}

TEST_CASE("counter RNG is pure and uniform-range bounded") {
  const CounterRng a{7}, b{7}, c{8};
  CHECK(a.raw(0) == b.raw(0));
  CHECK(a.raw(0) != c.raw(0));
  CHECK(a.raw(1) != a.raw(0));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = a.uniform(k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = a.uniform(k, -2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
}

TEST_CASE("fit_dt divides the horizon evenly") {
  const double dt = fit_dt(0.05, 1.6e-5);
  const double steps = 0.05 / dt;
  CHECK(std::abs(steps - std::round(steps)) <= 1e-9);
  CHECK(dt <= 1.6e-5 * (1.0 + 1e-9));
  CHECK(fit_dt(1.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("format_double survives a round trip") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}
