#include "fpe/linear_parabolic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpe {

namespace {

void check_parabolicity(const OperatorCoefficients& op) {
  for (std::size_t i = 0; i < op.a2.size(); ++i) {
    if (!(op.a2[i] > 0.0) || !std::isfinite(op.a2[i])) {
      throw std::runtime_error("operator assembly: diffusion coefficient not "
                               "uniformly parabolic at node " + std::to_string(i));
    }
  }
}

}  // namespace

OperatorCoefficients assemble_operator(const CoefficientSet& coeffs,
                                       const EquilibriumState& eq,
                                       std::span<const double> h0,
                                       const Grid1D& grid, double t,
                                       const AssemblyOptions& opts) {
  const int n = grid.n_nodes();
  const auto b2 = coeffs.b_squared(t);
  const auto& D = coeffs.diffusion;
  const auto& feq = eq.feq_values;

  std::vector<double> mobility(n);  // (b^2 / 2D) feq
  for (int i = 0; i < n; ++i) mobility[i] = b2[i] / (2.0 * D[i]) * feq[i];
  const auto grad_mobility = gradient(mobility, grid);
  const auto grad_D = gradient(D, grid);
  const auto grad_h0 = gradient(h0, grid);

  OperatorCoefficients op;
  op.time = t;
  op.a2.resize(n);
  op.a1.resize(n);
  op.a0.resize(n);
  for (int i = 0; i < n; ++i) {
    op.a2[i] = 0.5 * b2[i];
    op.a1[i] = D[i] / feq[i] * grad_mobility[i] + b2[i] / D[i] * grad_h0[i];
    op.a0[i] = 0.0;
    if (!opts.drop_grad_d_terms) {
      op.a1[i] -= b2[i] * h0[i] / (2.0 * D[i] * D[i]) * grad_D[i];
      op.a0[i] = -b2[i] / (2.0 * D[i] * D[i]) * grad_D[i] * grad_h0[i];
    }
  }
  check_parabolicity(op);
  return op;
}

ForcingField compute_g0(const CoefficientSet& coeffs, const EquilibriumState& eq,
                        std::span<const double> h0, const Grid1D& grid, double t,
                        const AssemblyOptions& opts) {
  const int n = grid.n_nodes();
  const auto b2 = coeffs.b_squared(t);
  const auto& D = coeffs.diffusion;
  const auto& feq = eq.feq_values;

  std::vector<double> mobility(n);
  for (int i = 0; i < n; ++i) mobility[i] = b2[i] / (2.0 * D[i]) * feq[i];
  const auto grad_mobility = gradient(mobility, grid);
  const auto grad_D = gradient(D, grid);
  const auto grad_h0 = gradient(h0, grid);
  const auto lap_h0 = laplacian(h0, grid);

  ForcingField g;
  g.time = t;
  g.g0_values.resize(n);
  for (int i = 0; i < n; ++i) {
    double v = 0.5 * b2[i] * lap_h0[i] +
               D[i] / feq[i] * grad_mobility[i] * grad_h0[i] +
               b2[i] / (2.0 * D[i]) * grad_h0[i] * grad_h0[i];
    if (!opts.drop_grad_d_terms) {
      v -= b2[i] / (2.0 * D[i] * D[i]) * h0[i] * grad_h0[i] * grad_D[i];
    }
    g.g0_values[i] = v;
  }
  return g;
}

std::vector<double> compute_nonlinearity(const Field& psi,
                                         const CoefficientSet& coeffs,
                                         const EquilibriumState& eq,
                                         const Grid1D& grid, double t,
                                         const AssemblyOptions& opts) {
  if (psi.kind != FieldKind::deviation_xi) {
    throw std::invalid_argument("compute_nonlinearity: expected a deviation field");
  }
  const int n = grid.n_nodes();
  const auto b2 = coeffs.b_squared(t);
  const auto& D = coeffs.diffusion;
  const auto grad_psi = gradient(psi.values, grid);
  const auto grad_D = gradient(coeffs.diffusion, grid);

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double v = b2[i] / (2.0 * D[i]) * grad_psi[i] * grad_psi[i];
    if (!opts.drop_grad_d_terms) {
      v -= b2[i] / (2.0 * D[i] * D[i]) * psi.values[i] * grad_psi[i] * grad_D[i];
    }
    if (opts.paper_literal_feq_in_nonlinearity) v *= eq.feq_values[i];
    out[i] = v;
  }
  return out;
}

std::vector<double> apply_operator(const OperatorCoefficients& op,
                                   std::span<const double> u, const Grid1D& grid) {
  const int n = grid.n_nodes();
  std::vector<double> out(n);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  out[0] = op.a2[0] * 2.0 * (u[1] - u[0]) * invdx2 + op.a0[0] * u[0];
  for (int i = 1; i < n - 1; ++i) {
    out[i] = op.a2[i] * (u[i + 1] - 2.0 * u[i] + u[i - 1]) * invdx2 +
             op.a1[i] * (u[i + 1] - u[i - 1]) * inv2dx + op.a0[i] * u[i];
  }
  out[n - 1] = op.a2[n - 1] * 2.0 * (u[n - 2] - u[n - 1]) * invdx2 +
               op.a0[n - 1] * u[n - 1];
  return out;
}

Field step_theta(const Field& xi_n, const OperatorCoefficients& op,
                 std::span<const double> rhs, double dt, double theta,
                 const Grid1D& grid) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_theta: dt must be positive");
  if (theta < 0.5 || theta > 1.0) {
    throw std::invalid_argument("step_theta: theta must lie in [0.5, 1]");
  }
  const int n = grid.n_nodes();
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  const double inv2dx = 1.0 / (2.0 * grid.dx);

  // Right-hand side: (I + (1-theta) dt L) xi_n + dt rhs.
  std::vector<double> b(n);
  if (theta < 1.0) {
    const auto Lu = apply_operator(op, xi_n.values, grid);
    for (int i = 0; i < n; ++i) b[i] = xi_n.values[i] + (1.0 - theta) * dt * Lu[i];
  } else {
    for (int i = 0; i < n; ++i) b[i] = xi_n.values[i];
  }
  for (int i = 0; i < n; ++i) b[i] += dt * rhs[i];

  // Tridiagonal rows of (I - theta dt L), ghost reflection folded into the
  // boundary rows (the drift cancels there).
  std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0);
  const double c = theta * dt;
  diag[0] = 1.0 + 2.0 * c * op.a2[0] * invdx2 - c * op.a0[0];
  upper[0] = -2.0 * c * op.a2[0] * invdx2;
  for (int i = 1; i < n - 1; ++i) {
    lower[i] = -c * (op.a2[i] * invdx2 - op.a1[i] * inv2dx);
    diag[i] = 1.0 + 2.0 * c * op.a2[i] * invdx2 - c * op.a0[i];
    upper[i] = -c * (op.a2[i] * invdx2 + op.a1[i] * inv2dx);
  }
  lower[n - 1] = -2.0 * c * op.a2[n - 1] * invdx2;
  diag[n - 1] = 1.0 + 2.0 * c * op.a2[n - 1] * invdx2 - c * op.a0[n - 1];

  // Thomas elimination.
  std::vector<double> cp(n), bp(n);
  double piv = diag[0];
  if (std::abs(piv) < 1e-300) throw std::runtime_error("step_theta: singular system");
  cp[0] = upper[0] / piv;
  bp[0] = b[0] / piv;
  for (int i = 1; i < n; ++i) {
    piv = diag[i] - lower[i] * cp[i - 1];
    if (std::abs(piv) < 1e-300) throw std::runtime_error("step_theta: singular system");
    cp[i] = upper[i] / piv;
    bp[i] = (b[i] - lower[i] * bp[i - 1]) / piv;
  }
  Field out{xi_n.kind, std::vector<double>(n), xi_n.time + dt};
  out.values[n - 1] = bp[n - 1];
  for (int i = n - 2; i >= 0; --i) out.values[i] = bp[i] - cp[i] * out.values[i + 1];
  return out;
}

Trajectory solve_linear_parabolic(const Trajectory& psi, const Problem& problem,
                                  double dt, double T, double theta,
                                  const AssemblyOptions& opts) {
  const Grid1D& grid = problem.grid;
  const int steps = static_cast<int>(std::llround(T / dt));
  if (psi.n_levels() != steps + 1 || std::abs(psi.dt - dt) > 1e-12 * std::max(1.0, dt)) {
    throw std::invalid_argument("solve_linear_parabolic: psi is not on the solver time mesh");
  }
  for (double v : psi.values.front()) {
    if (v != 0.0) {
      throw std::invalid_argument("solve_linear_parabolic: psi must vanish at t = 0");
    }
  }

  Trajectory eta;
  eta.kind = FieldKind::deviation_xi;
  eta.grid = grid;
  eta.dt = dt;
  eta.times.push_back(0.0);
  eta.values.emplace_back(grid.n_nodes(), 0.0);

  Field current{FieldKind::deviation_xi, std::vector<double>(grid.n_nodes(), 0.0), 0.0};
  for (int m = 0; m < steps; ++m) {
    const double t_n = m * dt;
    const double t_stage = t_n + theta * dt;
    const auto op = assemble_operator(problem.coeffs, problem.eq, problem.h0, grid,
                                      t_stage, opts);
    const auto g0 = compute_g0(problem.coeffs, problem.eq, problem.h0, grid,
                               t_stage, opts);
    const auto G = compute_nonlinearity(psi.level(m), problem.coeffs, problem.eq,
                                        grid, t_stage, opts);
    std::vector<double> rhs(grid.n_nodes());
    for (int i = 0; i < grid.n_nodes(); ++i) rhs[i] = g0.g0_values[i] + G[i];
    current = step_theta(current, op, rhs, dt, theta, grid);
    eta.times.push_back(current.time);
    eta.values.push_back(current.values);
  }
  return eta;
}

}  // namespace fpe
