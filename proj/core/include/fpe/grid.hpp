#ifndef FPE_GRID_HPP
#define FPE_GRID_HPP

#include <span>
#include <vector>

namespace fpe {

/// Uniform vertex-centered 1-D mesh on [x_min, x_max] with n_cells cells
/// (n_cells + 1 nodes). Immutable after construction.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 0;
  double dx = 0.0;
  std::vector<double> node_coords;

  int n_nodes() const { return n_cells + 1; }
};

/// Builds a grid. Requires x_max > x_min and n_cells >= 8.
Grid1D build_grid(double x_min, double x_max, int n_cells);

/// Trapezoidal quadrature over the whole domain; exact for affine integrands.
/// The weights (dx/2 at the endpoints, dx inside) coincide with the
/// finite-volume cell measures, so conservation statements transfer exactly.
double integrate(std::span<const double> values, const Grid1D& grid);

/// Central first derivative on nodes with ghost-point reflection at the
/// boundary (u_{-1} = u_1, u_{n+1} = u_{n-1}); boundary entries are zero.
std::vector<double> gradient(std::span<const double> u, const Grid1D& grid);

/// Central second derivative with the same ghost reflection.
std::vector<double> laplacian(std::span<const double> u, const Grid1D& grid);

/// Second-order one-sided first derivative at the left/right boundary node.
double one_sided_derivative_left(std::span<const double> u, const Grid1D& grid);
double one_sided_derivative_right(std::span<const double> u, const Grid1D& grid);

}  // namespace fpe

#endif
