#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fpe/coefficients.hpp"

using namespace fpe;

namespace {
std::vector<double> constant(const Grid1D& g, double v) {
  return std::vector<double>(g.n_nodes(), v);
}
}  // namespace

TEST_CASE("profile families evaluate per their conventions") {
  const Grid1D g = build_grid(0.0, 1.0, 10);
  const auto affine = sample_profile({Family::affine, {1.0, 1.0}}, g);
  CHECK(affine.front() == doctest::Approx(1.0));
  CHECK(affine.back() == doctest::Approx(2.0));
  const auto cosb = sample_profile({Family::cosine_bump, {1.0, 0.2, 1.0}}, g);
  CHECK(cosb.front() == doctest::Approx(1.2));
  CHECK(cosb.back() == doctest::Approx(0.8));
  const auto gauss = sample_profile({Family::gaussian_bump, {1.0, 0.5, 0.5, 0.1}}, g);
  CHECK(gauss[5] == doctest::Approx(1.5));
}

TEST_CASE("positivity floors are enforced with node context") {
  const Grid1D g = build_grid(0.0, 1.0, 10);
  CoefficientSpec spec;
  spec.diffusion = {Family::affine, {0.0, 1.0}};  // vanishes at x = 0
  spec.potential = {Family::constant, {0.0}};
  spec.noise = {Family::constant, {1.0}};
  CHECK_THROWS_AS(sample_coefficients(spec, g), std::invalid_argument);
  spec.diffusion = {Family::affine, {1.0, 1.0}};
  CHECK_NOTHROW(sample_coefficients(spec, g));
}

TEST_CASE("time modulation factors") {
  const Grid1D g = build_grid(0.0, 1.0, 10);
  CoefficientSpec spec;
  spec.diffusion = {Family::constant, {1.0}};
  spec.potential = {Family::constant, {0.0}};
  spec.noise = {Family::constant, {2.0}};
  spec.b_modulation = TimeModulation::exponential_decay;
  spec.b_time_params = {3.0};
  const CoefficientSet set = sample_coefficients(spec, g);
  CHECK(set.b_time_factor(0.0) == doctest::Approx(1.0));
  CHECK(set.b_time_factor(0.5) == doctest::Approx(std::exp(-1.5)));
  const auto b2 = set.b_squared(0.5);
  CHECK(b2[0] == doctest::Approx(4.0 * std::exp(-3.0)));
}

TEST_CASE("equilibrium closed forms") {
  SUBCASE("D = 1, phi = 0 on [0,1]") {
    const Grid1D g = build_grid(0.0, 1.0, 100);
    const auto eq = compute_equilibrium(constant(g, 1.0), constant(g, 0.0), g);
    CHECK(std::abs(eq.c_norm) <= 1e-10);
    for (double v : eq.feq_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("D = 1, phi = x on [0,1]") {
    const Grid1D g = build_grid(0.0, 1.0, 400);
    std::vector<double> phi(g.node_coords);
    const auto eq = compute_equilibrium(constant(g, 1.0), phi, g);
    CHECK(eq.c_norm == doctest::Approx(-std::log(1.0 - std::exp(-1.0))).epsilon(1e-5));
    CHECK(eq.feq_values[0] == doctest::Approx(std::exp(eq.c_norm)).epsilon(1e-12));
  }
  SUBCASE("D = 2, phi = 0 on [0,2]") {
    const Grid1D g = build_grid(0.0, 2.0, 100);
    const auto eq = compute_equilibrium(constant(g, 2.0), constant(g, 0.0), g);
    CHECK(eq.c_norm == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-8));
  }
}

TEST_CASE("equilibrium satisfies the defining relation pointwise") {
  const Grid1D g = build_grid(0.0, 1.0, 64);
  std::vector<double> D(g.n_nodes()), phi(g.n_nodes());
  for (int i = 0; i < g.n_nodes(); ++i) {
    D[i] = 1.0 + 0.2 * std::cos(M_PI * g.node_coords[i]);
    phi[i] = 0.3 * g.node_coords[i] * g.node_coords[i];
  }
  const auto eq = compute_equilibrium(D, phi, g);
  CHECK(std::abs(integrate(eq.feq_values, g) - 1.0) <= 1e-10);
  for (int i = 0; i < g.n_nodes(); ++i) {
    CHECK(std::abs(phi[i] + D[i] * std::log(eq.feq_values[i]) - eq.c_norm) <= 1e-12);
  }
}

TEST_CASE("gauge property: shifting phi by k shifts c_norm by k") {
  const Grid1D g = build_grid(0.0, 1.0, 64);
  std::vector<double> D = constant(g, 1.3), phi(g.n_nodes()), phi_k(g.n_nodes());
  for (int i = 0; i < g.n_nodes(); ++i) {
    phi[i] = std::sin(2.0 * M_PI * g.node_coords[i]);
    phi_k[i] = phi[i] + 0.7;
  }
  const auto eq = compute_equilibrium(D, phi, g);
  const auto eq_k = compute_equilibrium(D, phi_k, g);
  CHECK(eq_k.c_norm - eq.c_norm == doctest::Approx(0.7).epsilon(1e-9));
  for (int i = 0; i < g.n_nodes(); ++i) {
    CHECK(eq_k.feq_values[i] == doctest::Approx(eq.feq_values[i]).epsilon(1e-9));
  }
}

TEST_CASE("normalization integral is increasing in the constant") {
  const Grid1D g = build_grid(0.0, 1.0, 32);
  const std::vector<double> D = constant(g, 1.0);
  std::vector<double> phi(g.n_nodes());
  for (int i = 0; i < g.n_nodes(); ++i) phi[i] = g.node_coords[i];
  auto mass_at = [&](double c) {
    std::vector<double> f(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i) f[i] = std::exp(-(phi[i] - c) / D[i]);
    return integrate(f, g);
  };
  double prev = mass_at(-2.0);
  for (double c = -1.5; c <= 2.0; c += 0.5) {
    const double cur = mass_at(c);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("compatibility check") {
  const Grid1D g = build_grid(0.0, 1.0, 100);
  const std::vector<double> D = constant(g, 1.0);
  SUBCASE("rho0 = 1") {
    const auto r = check_compatibility(constant(g, 1.0), D, g, 1e-14);
    CHECK(r.ok);
    CHECK(r.residual_left == 0.0);
    CHECK(r.residual_right == 0.0);
  }
  SUBCASE("cosine perturbation passes at 10 dx^2") {
    std::vector<double> rho0(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i) {
      rho0[i] = 1.0 + 0.05 * std::cos(M_PI * g.node_coords[i]);
    }
    CHECK(check_compatibility(rho0, D, g, 10.0 * g.dx * g.dx).ok);
  }
  SUBCASE("exponential fails with residual near 1") {
    std::vector<double> rho0(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i) rho0[i] = std::exp(g.node_coords[i]);
    const auto r = check_compatibility(rho0, D, g, 10.0 * g.dx * g.dx);
    CHECK_FALSE(r.ok);
    CHECK(r.residual_left == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.residual_right == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("non-positive rho0 is a domain error") {
    CHECK_THROWS_AS(check_compatibility(constant(g, 0.0), D, g, 1e-8),
                    std::domain_error);
  }
}

TEST_CASE("family and modulation name round trips") {
  for (Family f : {Family::constant, Family::affine, Family::cosine_bump,
                   Family::gaussian_bump, Family::tabulated}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_name("nope"), std::invalid_argument);
  for (TimeModulation m : {TimeModulation::none, TimeModulation::exponential_decay,
                           TimeModulation::sinusoidal}) {
    CHECK(modulation_from_name(modulation_name(m)) == m);
  }
}
