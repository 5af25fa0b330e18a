#pragma once

// Finite-volume reference solver for div(eps grad g) = -delta(r - r') in
// layered media with eps piecewise constant along z. The axis of an
// axisymmetric (rho, z) grid is placed through the source; the unknown is the
// scattering part g1 = g - g0 / eps_src, so no discrete delta is needed.

#include <iosfwd>
#include <vector>

#include "greens/core.hpp"

namespace greens::oracle {

struct GridSpec {
  int n_rho = 256;
  int n_z = 256;
  double rho_max = 1.0;  // m, measured from the source axis
  double z_min = -1.0;   // m, absolute
  double z_max = 1.0;    // m, absolute
  double tol = 1e-10;    // relative residual of the linear solve

  double d_rho() const noexcept { return rho_max / n_rho; }
  double d_z() const noexcept { return (z_max - z_min) / n_z; }
  /// Throws InvalidArgument for fewer than 32 cells per direction or an
  /// empty domain.
  void validate() const;
};

/// Solved g1 on cell centres.
class ScatteringField {
 public:
  const GridSpec& grid() const noexcept { return grid_; }
  const Point3& source() const noexcept { return source_; }
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

  double rho_center(int i) const noexcept { return (i + 0.5) * grid_.d_rho(); }
  double z_center(int j) const noexcept { return grid_.z_min + (j + 0.5) * grid_.d_z(); }
  /// g1 of cell (i, j); zero inside perfect conductors.
  double cell(int i, int j) const { return values_[index(i, j)]; }
  bool in_conductor(int i, int j) const { return conductor_[index(i, j)] != 0; }

  /// g1 at lateral distance rho from the source axis and height z, by
  /// bilinear interpolation (even reflection across the axis; the z pair is
  /// kept inside the medium containing z).
  double sample(double rho, double z) const;
  /// g1 at an absolute position.
  double sample(Point3 p) const;

  /// Outward flux -eps dg/dn of the full g through the boundary of the cell
  /// block i < i_out, j_lo <= j < j_hi. Equals 1 for a block containing the
  /// source.
  double flux_out(int i_out, int j_lo, int j_hi) const;

  /// CSV with header "rho,z,g1", one row per non-conductor cell.
  void write_csv(std::ostream& os) const;

 private:
  friend ScatteringField solve_scattering_g1(const Geometry&, Point3, const GridSpec&);

  std::size_t index(int i, int j) const;
  double eps(int j) const { return eps_[static_cast<std::size_t>(j)]; }
  double free_part(double rho, double z) const;

  GridSpec grid_;
  Point3 source_;
  double eps_source_ = 1.0;
  std::vector<double> eps_;          // per z row; 0 marks a conductor
  std::vector<double> values_;       // n_rho * n_z, row-major in j
  std::vector<unsigned char> conductor_;
  int iterations_ = 0;
  double residual_ = 0.0;
};

/// Supports FreeSpace, HalfSpace and ThreeLayerCavity. Every interface must
/// coincide with a cell face (GridMisaligned otherwise), the source may not
/// sit on an interface (SourceOnInterface) and must be at least 10 cells
/// from the domain boundary. Throws SolverDiverged when the conjugate
/// gradient solve misses grid.tol.
ScatteringField solve_scattering_g1(const Geometry& geom, Point3 src,
                                    const GridSpec& grid);

}  // namespace greens::oracle
