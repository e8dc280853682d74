#ifndef POLARON_GRID_HPP
#define POLARON_GRID_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace polaron {

// One discretized phonon mode: an axis-aligned momentum cell clipped to the
// ball |k| <= lambda_max.  k is the cell center, weight the clipped volume,
// coupling_integral the integral of 1/|k| over the clipped cell.
struct Mode {
  Eigen::Vector3d k;
  double weight = 0.0;
  double coupling_integral = 0.0;
};

struct GridOptions {
  double weight_abs_tol = 1e-11;   // per-cell absolute quadrature tolerance, times cell volume
  double coupling_rel_tol = 1e-9;  // per-cell relative tolerance for the 1/|k| integrals
  int gl_order = 6;                // base Gauss-Legendre order for smooth cells
  // Cells whose clipped volume falls below this fraction of a full cell are
  // dropped together with their mirror partner.  Default keeps every cell so
  // the weights sum to the exact ball volume.
  double min_weight_fraction = 0.0;
};

struct MomentumGrid {
  std::vector<Mode> modes;
  double lambda_max = 0.0;
  double spacing = 0.0;
  bool symmetric = true;

  // Modes are sorted by |k| then lexicographically, so the modes inside any
  // cutoff lambda form a prefix of the list.
  std::size_t count_within(double lambda) const;
  double total_weight() const;
};

inline bool in_ball(const Eigen::Vector3d& k, double lambda) {
  return k.squaredNorm() <= lambda * lambda;
}

// Cartesian cells of side `spacing` with corners on the lattice spacing*Z^3,
// intersected with the ball of radius lambda_max.  Cells are generated in
// mirror pairs k <-> -k sharing one quadrature result, so the grid symmetry
// is exact in floating point.
MomentumGrid build_grid(double lambda_max, double spacing, const GridOptions& opt = {});

// Columnar text format: "# lambda_max spacing mode_count" then one line per
// mode "kx ky kz weight coupling_integral", 17 significant digits.
void write_grid(std::ostream& os, const MomentumGrid& grid);
MomentumGrid read_grid(std::istream& is);

}  // namespace polaron

#endif
