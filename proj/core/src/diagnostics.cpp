#include "fpe/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fpe {

namespace {

void require_positive_span(std::span<const double> v, const char* op) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw std::domain_error(std::string(op) + ": non-positive density at node " +
                              std::to_string(i));
    }
  }
}

// Generic nodal derivatives for the norm evaluators: central inside,
// second-order one-sided at the boundary (the trajectories fed to the
// evaluator need not satisfy any boundary condition).
std::vector<double> d1(const std::vector<double>& u, double dx) {
  const int n = static_cast<int>(u.size());
  std::vector<double> out(n);
  out[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
  for (int i = 1; i < n - 1; ++i) out[i] = (u[i + 1] - u[i - 1]) / (2.0 * dx);
  out[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx);
  return out;
}

std::vector<double> d2(const std::vector<double>& u, double dx) {
  const int n = static_cast<int>(u.size());
  std::vector<double> out(n);
  const double invdx2 = 1.0 / (dx * dx);
  out[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) * invdx2;
  for (int i = 1; i < n - 1; ++i) out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * invdx2;
  out[n - 1] = (2.0 * u[n - 1] - 5.0 * u[n - 2] + 4.0 * u[n - 3] - u[n - 4]) * invdx2;
  return out;
}

struct LevelSet {
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};

LevelSet time_derivative(const Trajectory& traj) {
  // Forward differences; the last level falls back to a backward difference.
  LevelSet out;
  const int M = traj.n_levels();
  const int n = static_cast<int>(traj.values.front().size());
  out.times = traj.times;
  out.values.assign(M, std::vector<double>(n));
  for (int m = 0; m < M; ++m) {
    const int a = (m < M - 1) ? m : m - 1;
    const double inv_dt = 1.0 / (traj.times[a + 1] - traj.times[a]);
    for (int i = 0; i < n; ++i) {
      out.values[m][i] = (traj.values[a + 1][i] - traj.values[a][i]) * inv_dt;
    }
  }
  return out;
}

double sup_of(const LevelSet& s, int ts) {
  double v = 0.0;
  for (std::size_t m = 0; m < s.values.size(); m += ts) {
    for (double x : s.values[m]) v = std::max(v, std::abs(x));
  }
  return v;
}

double space_seminorm_of(const LevelSet& s, const std::vector<double>& coords,
                         double alpha, int ss, int ts) {
  double v = 0.0;
  const int n = static_cast<int>(coords.size());
  for (std::size_t m = 0; m < s.values.size(); m += ts) {
    const auto& lvl = s.values[m];
    for (int i = 0; i < n; i += ss) {
      for (int j = i + 1; j < n; j += ss) {
        const double q = std::abs(lvl[j] - lvl[i]) /
                         std::pow(coords[j] - coords[i], alpha);
        v = std::max(v, q);
      }
    }
  }
  return v;
}

double time_seminorm_of(const LevelSet& s, double exponent, int ss, int ts) {
  double v = 0.0;
  const int M = static_cast<int>(s.values.size());
  const int n = M ? static_cast<int>(s.values.front().size()) : 0;
  for (int i = 0; i < n; i += ss) {
    for (int m = 0; m < M; m += ts) {
      for (int l = m + ts; l < M; l += ts) {
        const double dtml = s.times[l] - s.times[m];
        if (!(dtml > 0.0)) continue;
        const double q = std::abs(s.values[l][i] - s.values[m][i]) /
                         std::pow(dtml, exponent);
        v = std::max(v, q);
      }
    }
  }
  return v;
}

LevelSet as_levels(const Trajectory& traj) { return {traj.times, traj.values}; }

LevelSet space_derivative(const Trajectory& traj, int order) {
  LevelSet out;
  out.times = traj.times;
  out.values.reserve(traj.values.size());
  for (const auto& lvl : traj.values) {
    out.values.push_back(order == 1 ? d1(lvl, traj.grid.dx) : d2(lvl, traj.grid.dx));
  }
  return out;
}

}  // namespace

double free_energy_f(std::span<const double> f, std::span<const double> diffusion,
                     std::span<const double> potential, const Grid1D& grid) {
  require_positive_span(f, "free_energy_f");
  std::vector<double> integrand(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    integrand[i] = diffusion[i] * f[i] * (std::log(f[i]) - 1.0) + f[i] * potential[i];
  }
  return integrate(integrand, grid);
}

double free_energy_rho(std::span<const double> rho, std::span<const double> diffusion,
                       const EquilibriumState& eq, const Grid1D& grid) {
  require_positive_span(rho, "free_energy_rho");
  std::vector<double> integrand(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    integrand[i] = (diffusion[i] * (std::log(rho[i]) - 1.0) + eq.c_norm) * rho[i] *
                   eq.feq_values[i];
  }
  return integrate(integrand, grid);
}

double free_energy_h(std::span<const double> h, std::span<const double> diffusion,
                     const EquilibriumState& eq, const Grid1D& grid) {
  std::vector<double> integrand(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    integrand[i] = (h[i] - diffusion[i] + eq.c_norm) *
                   std::exp(h[i] / diffusion[i]) * eq.feq_values[i];
  }
  return integrate(integrand, grid);
}

double free_energy_xi(std::span<const double> xi, std::span<const double> h0,
                      std::span<const double> diffusion, const EquilibriumState& eq,
                      const Grid1D& grid) {
  std::vector<double> integrand(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double h = xi[i] + h0[i];
    integrand[i] = (h - diffusion[i] + eq.c_norm) *
                   std::exp(h / diffusion[i]) * eq.feq_values[i];
  }
  return integrate(integrand, grid);
}

double dissipation_rate(std::span<const double> f, const CoefficientSet& coeffs,
                        const Grid1D& grid, double t) {
  require_positive_span(f, "dissipation_rate");
  const int n = grid.n_nodes();
  const auto b2 = coeffs.b_squared(t);
  std::vector<double> force(n);  // phi + D log f
  for (int i = 0; i < n; ++i) {
    force[i] = coeffs.potential[i] + coeffs.diffusion[i] * std::log(f[i]);
  }
  const auto grad_force = gradient(force, grid);
  std::vector<double> integrand(n);
  for (int i = 0; i < n; ++i) {
    integrand[i] = b2[i] / (2.0 * coeffs.diffusion[i]) * grad_force[i] *
                   grad_force[i] * f[i];
  }
  return -integrate(integrand, grid);
}

double dissipation_rate_faces(std::span<const double> rho,
                              const CoefficientSet& coeffs,
                              const EquilibriumState& eq, const Grid1D& grid,
                              double t) {
  require_positive_span(rho, "dissipation_rate_faces");
  const int n = grid.n_nodes();
  const auto b2 = coeffs.b_squared(t);
  double sum = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    const double coeff =
        0.5 * (b2[i] / (2.0 * coeffs.diffusion[i]) * eq.feq_values[i] +
               b2[i + 1] / (2.0 * coeffs.diffusion[i + 1]) * eq.feq_values[i + 1]);
    const double rho_face = std::sqrt(rho[i] * rho[i + 1]);
    const double dh = (coeffs.diffusion[i + 1] * std::log(rho[i + 1]) -
                       coeffs.diffusion[i] * std::log(rho[i])) / grid.dx;
    sum += coeff * rho_face * dh * dh * grid.dx;
  }
  return -sum;
}

HolderReport holder_norms(const Trajectory& traj, double alpha,
                          int space_stride, int time_stride) {
  if (traj.n_levels() == 0) {
    throw std::invalid_argument("holder_norms: empty trajectory");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("holder_norms: alpha must lie in (0, 1)");
  }
  const int ss = std::max(1, space_stride);
  const int ts = std::max(1, time_stride);
  const auto& coords = traj.grid.node_coords;

  HolderReport rep;
  rep.alpha = alpha;
  rep.space_stride = ss;
  rep.time_stride = ts;

  const LevelSet theta = as_levels(traj);
  rep.sup_norm = sup_of(theta, ts);
  rep.space_seminorm = space_seminorm_of(theta, coords, alpha, ss, ts);
  rep.time_seminorm = time_seminorm_of(theta, 0.5 * alpha, ss, ts);
  rep.c_alpha_norm = rep.sup_norm + rep.space_seminorm + rep.time_seminorm;

  if (traj.n_levels() >= 2 && traj.grid.n_nodes() >= 4) {
    const LevelSet grad = space_derivative(traj, 1);
    const LevelSet hess = space_derivative(traj, 2);
    const LevelSet dt = time_derivative(traj);
    rep.c2_alpha_norm =
        rep.sup_norm + sup_of(grad, ts) + sup_of(hess, ts) + sup_of(dt, ts) +
        space_seminorm_of(hess, coords, alpha, ss, ts) +
        space_seminorm_of(dt, coords, alpha, ss, ts) +
        time_seminorm_of(grad, 0.5 * (1.0 + alpha), ss, ts) +
        time_seminorm_of(hess, 0.5 * alpha, ss, ts) +
        time_seminorm_of(dt, 0.5 * alpha, ss, ts);
  } else {
    rep.c2_alpha_norm = rep.sup_norm;
  }
  return rep;
}

DecayCheck verify_decay_bounds(const Trajectory& traj, double alpha, double T) {
  for (double v : traj.values.front()) {
    if (v != 0.0) {
      throw std::invalid_argument("verify_decay_bounds: the initial slice must "
                                  "vanish identically");
    }
  }
  const auto& coords = traj.grid.node_coords;
  const LevelSet theta = as_levels(traj);
  const LevelSet grad = space_derivative(traj, 1);

  const double c2 = holder_norms(traj, alpha).c2_alpha_norm;
  const double grad_c_alpha = sup_of(grad, 1) +
                              space_seminorm_of(grad, coords, alpha, 1, 1) +
                              time_seminorm_of(grad, 0.5 * alpha, 1, 1);
  const double theta_c_alpha = sup_of(theta, 1) +
                               space_seminorm_of(theta, coords, alpha, 1, 1) +
                               time_seminorm_of(theta, 0.5 * alpha, 1, 1);

  DecayCheck chk;
  chk.gradient_lhs = grad_c_alpha;
  chk.gradient_rhs =
      3.0 * (std::pow(T, 0.5 * (1.0 + alpha)) + std::sqrt(T)) * c2;
  chk.gradient_margin = chk.gradient_rhs - chk.gradient_lhs;
  chk.value_lhs = theta_c_alpha;
  chk.value_rhs = 3.0 * (T + std::pow(T, 1.0 - 0.5 * alpha)) * c2;
  chk.value_margin = chk.value_rhs - chk.value_lhs;
  chk.pass = chk.gradient_margin >= 0.0 && chk.value_margin >= 0.0;
  return chk;
}

ProductCheck product_norm_check(const Trajectory& t1, const Trajectory& t2,
                                double alpha) {
  if (t1.n_levels() != t2.n_levels() ||
      t1.grid.n_nodes() != t2.grid.n_nodes() || t1.times != t2.times) {
    throw std::invalid_argument("product_norm_check: trajectory meshes do not match");
  }
  Trajectory prod = t1;
  for (int m = 0; m < prod.n_levels(); ++m) {
    for (int i = 0; i < prod.grid.n_nodes(); ++i) {
      prod.values[m][i] *= t2.values[m][i];
    }
  }
  ProductCheck chk;
  chk.lhs = holder_norms(prod, alpha).c_alpha_norm;
  chk.rhs = holder_norms(t1, alpha).c_alpha_norm * holder_norms(t2, alpha).c_alpha_norm;
  chk.pass = chk.lhs <= chk.rhs * (1.0 + 1e-12);
  return chk;
}

DiagnosticsRecord make_record(const Field& f, const Problem& problem, double sup_xi) {
  DiagnosticsRecord rec;
  rec.time = f.time;
  rec.mass = integrate(f.values, problem.grid);
  rec.free_energy = free_energy_f(f.values, problem.coeffs.diffusion,
                                  problem.coeffs.potential, problem.grid);
  rec.dissipation_rate = dissipation_rate(f.values, problem.coeffs, problem.grid,
                                          f.time);
  rec.min_density = *std::min_element(f.values.begin(), f.values.end());
  rec.sup_xi = sup_xi;
  return rec;
}

}  // namespace fpe
