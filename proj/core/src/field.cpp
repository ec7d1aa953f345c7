#include "fpe/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fpe {

double Trajectory::sup_abs() const {
  double s = 0.0;
  for (const auto& level : values) {
    for (double v : level) s = std::max(s, std::abs(v));
  }
  return s;
}

Trajectory zero_trajectory(FieldKind kind, const Grid1D& grid, double dt, double T) {
  if (!(dt > 0.0) || !(T > 0.0) || dt > T * (1.0 + 1e-12)) {
    throw std::invalid_argument("zero_trajectory: need 0 < dt <= T");
  }
  Trajectory traj;
  traj.kind = kind;
  traj.grid = grid;
  traj.dt = dt;
  const int steps = static_cast<int>(std::llround(T / dt));
  for (int m = 0; m <= steps; ++m) {
    traj.times.push_back(m * dt);
    traj.values.emplace_back(grid.n_nodes(), 0.0);
  }
  return traj;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  if (a.n_levels() != b.n_levels() ||
      a.grid.n_nodes() != b.grid.n_nodes()) {
    throw std::invalid_argument("sup_distance: trajectory meshes do not match");
  }
  double s = 0.0;
  for (int m = 0; m < a.n_levels(); ++m) {
    for (int i = 0; i < a.grid.n_nodes(); ++i) {
      s = std::max(s, std::abs(a.values[m][i] - b.values[m][i]));
    }
  }
  return s;
}

}  // namespace fpe
