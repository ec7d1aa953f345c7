#include "fpe/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpe {

Grid1D build_grid(double x_min, double x_max, int n_cells) {
  if (!(x_max > x_min)) {
    throw std::invalid_argument("build_grid: x_max (" + std::to_string(x_max) +
                                ") must exceed x_min (" + std::to_string(x_min) + ")");
  }
  if (n_cells < 8) {
    throw std::invalid_argument("build_grid: n_cells (" + std::to_string(n_cells) +
                                ") must be at least 8");
  }
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = n_cells;
  g.dx = (x_max - x_min) / n_cells;
  g.node_coords.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) {
    g.node_coords[i] = x_min + i * g.dx;
  }
  g.node_coords.front() = x_min;
  g.node_coords.back() = x_max;
  return g;
}

double integrate(std::span<const double> values, const Grid1D& grid) {
  const int n = grid.n_nodes();
  if (static_cast<int>(values.size()) != n) {
    throw std::invalid_argument("integrate: expected " + std::to_string(n) +
                                " values, got " + std::to_string(values.size()));
  }
  double sum = 0.5 * (values[0] + values[n - 1]);
  for (int i = 1; i < n - 1; ++i) sum += values[i];
  return sum * grid.dx;
}

std::vector<double> gradient(std::span<const double> u, const Grid1D& grid) {
  const int n = grid.n_nodes();
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("gradient: length mismatch");
  }
  std::vector<double> out(n);
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  out[0] = 0.0;  // ghost reflection: u_{-1} = u_1
  for (int i = 1; i < n - 1; ++i) out[i] = (u[i + 1] - u[i - 1]) * inv2dx;
  out[n - 1] = 0.0;
  return out;
}

std::vector<double> laplacian(std::span<const double> u, const Grid1D& grid) {
  const int n = grid.n_nodes();
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("laplacian: length mismatch");
  }
  std::vector<double> out(n);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  out[0] = 2.0 * (u[1] - u[0]) * invdx2;
  for (int i = 1; i < n - 1; ++i) out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * invdx2;
  out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * invdx2;
  return out;
}

double one_sided_derivative_left(std::span<const double> u, const Grid1D& grid) {
  return (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * grid.dx);
}

double one_sided_derivative_right(std::span<const double> u, const Grid1D& grid) {
  const int n = grid.n_nodes();
  return (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * grid.dx);
}

}  // namespace fpe
