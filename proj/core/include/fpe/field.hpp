#ifndef FPE_FIELD_HPP
#define FPE_FIELD_HPP

#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

enum class FieldKind { density_f, scaled_rho, log_h, deviation_xi };

/// One unknown on the grid nodes at a single time level. density_f and
/// scaled_rho values are strictly positive; log_h and deviation_xi are
/// unconstrained in sign.
struct Field {
  FieldKind kind = FieldKind::density_f;
  std::vector<double> values;
  double time = 0.0;
};

/// Per-step observables recorded along a trajectory.
struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double free_energy = 0.0;
  double dissipation_rate = 0.0;
  double min_density = 0.0;
  double sup_xi = 0.0;
};

/// Time-indexed sequence of fields on a fixed grid with uniform step dt.
/// For long marches the field levels may be stored with a stride while the
/// diagnostics stay per-step; `times` always matches `values` level-wise.
struct Trajectory {
  FieldKind kind = FieldKind::density_f;
  Grid1D grid;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> values;
  std::vector<DiagnosticsRecord> diagnostics;

  int n_levels() const { return static_cast<int>(times.size()); }
  Field level(int m) const { return Field{kind, values.at(m), times.at(m)}; }
  double sup_abs() const;
};

/// Zero trajectory of the given kind on the uniform time mesh {0, dt, ..., T}.
Trajectory zero_trajectory(FieldKind kind, const Grid1D& grid, double dt, double T);

/// Sup over all nodes and levels of |a - b|; meshes must agree.
double sup_distance(const Trajectory& a, const Trajectory& b);

}  // namespace fpe

#endif
