#include "greens/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

namespace greens::oracle {

namespace {

using constants::pi;
constexpr const char* kModule = "oracle";

[[noreturn]] void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, kModule, detail);
}

struct Layer {
  double z_lo;
  double z_hi;
  Permittivity eps;
};

std::vector<Layer> layers_of(const Geometry& geom) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* g = std::get_if<FreeSpace>(&geom))
    return {{-inf, inf, Permittivity::finite(g->eps)}};
  if (const auto* g = std::get_if<HalfSpace>(&geom))
    return {{-inf, 0.0, g->eps2}, {0.0, inf, g->eps1}};
  if (const auto* g = std::get_if<ThreeLayerCavity>(&geom)) {
    const double h = 0.5 * g->d;
    return {{-inf, -h, g->eps1}, {-h, h, g->eps2}, {h, inf, g->eps3}};
  }
  fail(ErrorKind::UnsupportedGeometry,
       std::string(geometry_name(geom)) + " is not a layered geometry");
}

const Layer& layer_at(const std::vector<Layer>& layers, double z) {
  for (const Layer& l : layers)
    if (z >= l.z_lo && z < l.z_hi) return l;
  return layers.back();
}

}  // namespace

void GridSpec::validate() const {
  if (n_rho < 32 || n_z < 32) fail(ErrorKind::InvalidArgument, "grid needs >= 32 cells per direction");
  if (!(rho_max > 0.0) || !std::isfinite(rho_max))
    fail(ErrorKind::InvalidArgument, "rho_max must be finite and > 0");
  if (!(z_max > z_min) || !std::isfinite(z_min) || !std::isfinite(z_max))
    fail(ErrorKind::InvalidArgument, "need finite z_min < z_max");
  if (!(tol > 0.0) || !(tol < 1.0)) fail(ErrorKind::InvalidArgument, "tol must lie in (0, 1)");
}

std::size_t ScatteringField::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= grid_.n_rho || j >= grid_.n_z)
    fail(ErrorKind::OutOfRegion, "cell index outside the grid");
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.n_rho) +
         static_cast<std::size_t>(i);
}

double ScatteringField::free_part(double rho, double z) const {
  const double dz = z - source_.z;
  return 1.0 / (4.0 * pi * eps_source_ * std::sqrt(rho * rho + dz * dz));
}

double ScatteringField::sample(double rho, double z) const {
  const double dr = grid_.d_rho();
  const double dz = grid_.d_z();
  rho = std::abs(rho);
  if (!(rho <= grid_.rho_max) || !(z >= grid_.z_min) || !(z <= grid_.z_max)) {
    std::ostringstream os;
    os << "sample point (rho=" << rho << ", z=" << z << ") outside the grid";
    fail(ErrorKind::OutOfRegion, os.str());
  }
  const int row = std::clamp(static_cast<int>(std::floor((z - grid_.z_min) / dz)), 0,
                             grid_.n_z - 1);
  if (eps(row) == 0.0) fail(ErrorKind::OutOfRegion, "sample point inside a conductor");

  const double u = rho / dr - 0.5;
  const int i0 = static_cast<int>(std::floor(u));
  const double fu = u - i0;
  const auto at = [&](int i, int j) { return cell(i < 0 ? -1 - i : i, j); };

  const double v = (z - grid_.z_min) / dz - 0.5;
  int j0 = static_cast<int>(std::floor(v));
  j0 = std::clamp(j0, 0, grid_.n_z - 2);
  // Keep both rows in the medium of `row`; extrapolate linearly otherwise.
  if (eps(j0) != eps(row) || eps(j0 + 1) != eps(row)) j0 = row == j0 ? row - 1 : row;
  j0 = std::clamp(j0, 0, grid_.n_z - 2);
  const double fv = v - j0;
  const int i1 = std::min(i0 + 1, grid_.n_rho - 1);
  const double low = (1.0 - fu) * at(i0, j0) + fu * at(i1, j0);
  const double high = (1.0 - fu) * at(i0, j0 + 1) + fu * at(i1, j0 + 1);
  return (1.0 - fv) * low + fv * high;
}

double ScatteringField::sample(Point3 p) const {
  return sample(std::hypot(p.x - source_.x, p.y - source_.y), p.z);
}

double ScatteringField::flux_out(int i_out, int j_lo, int j_hi) const {
  if (i_out < 1 || i_out >= grid_.n_rho || j_lo < 1 || j_hi >= grid_.n_z || j_lo >= j_hi)
    fail(ErrorKind::InvalidArgument, "flux contour must lie strictly inside the grid");
  const double dr = grid_.d_rho();
  const double dz = grid_.d_z();
  const auto full = [&](int i, int j) {
    return free_part(rho_center(i), z_center(j)) + cell(i, j);
  };
  double flux = 0.0;
  // Radial face at rho = i_out * dr.
  for (int j = j_lo; j < j_hi; ++j) {
    if (eps(j) == 0.0) continue;
    const double area = 2.0 * pi * i_out * dr * dz;
    flux -= area * eps(j) / dr * (full(i_out, j) - full(i_out - 1, j));
  }
  // Horizontal faces: (inside row, outside row, sign of outward normal).
  const auto z_face = [&](int in, int out) {
    for (int i = 0; i < i_out; ++i) {
      const double area = 2.0 * pi * rho_center(i) * dr;
      const double ei = eps(in);
      const double eo = eps(out);
      if (ei == 0.0) continue;
      if (eo == 0.0) {
        flux -= area * ei / (0.5 * dz) * (0.0 - full(i, in));
      } else {
        const double t = area / (0.5 * dz / ei + 0.5 * dz / eo);
        flux -= t * (full(i, out) - full(i, in));
      }
    }
  };
  z_face(j_lo, j_lo - 1);
  z_face(j_hi - 1, j_hi);
  return flux;
}

void ScatteringField::write_csv(std::ostream& os) const {
  os << "rho,z,g1\n";
  char line[96];
  for (int j = 0; j < grid_.n_z; ++j) {
    if (eps(j) == 0.0) continue;
    for (int i = 0; i < grid_.n_rho; ++i) {
      std::snprintf(line, sizeof line, "%.9e,%.9e,%.9e\n", rho_center(i), z_center(j),
                    cell(i, j));
      os << line;
    }
  }
}

ScatteringField solve_scattering_g1(const Geometry& geom, Point3 src, const GridSpec& grid) {
  validate(geom);
  grid.validate();
  if (!src.finite()) fail(ErrorKind::InvalidArgument, "non-finite source");
  const std::vector<Layer> layers = layers_of(geom);
  const double dr = grid.d_rho();
  const double dz = grid.d_z();

  for (std::size_t k = 1; k < layers.size(); ++k) {
    const double zi = layers[k].z_lo;
    if (src.z == zi) {
      std::ostringstream os;
      os << "source at z=" << src.z << " lies on an interface";
      fail(ErrorKind::SourceOnInterface, os.str());
    }
    if (zi <= grid.z_min || zi >= grid.z_max) continue;
    const double faces = (zi - grid.z_min) / dz;
    if (std::abs(faces - std::round(faces)) > 1e-6) {
      std::ostringstream os;
      os << "interface z=" << zi << " is not on a cell face (dz=" << dz << ")";
      fail(ErrorKind::GridMisaligned, os.str());
    }
  }
  if (src.z - grid.z_min < 10.0 * dz || grid.z_max - src.z < 10.0 * dz)
    fail(ErrorKind::InvalidArgument, "source needs a margin of 10 cells to the z boundary");
  const Layer& source_layer = layer_at(layers, src.z);
  if (source_layer.eps.is_conductor())
    fail(ErrorKind::OutOfRegion, "source inside a perfect conductor");

  ScatteringField field;
  field.grid_ = grid;
  field.source_ = src;
  field.eps_source_ = source_layer.eps.value();
  const int nr = grid.n_rho;
  const int nz = grid.n_z;
  field.eps_.resize(static_cast<std::size_t>(nz));
  for (int j = 0; j < nz; ++j) {
    const Layer& l = layer_at(layers, field.z_center(j));
    field.eps_[static_cast<std::size_t>(j)] = l.eps.is_conductor() ? 0.0 : l.eps.value();
  }
  const std::size_t cells = static_cast<std::size_t>(nr) * static_cast<std::size_t>(nz);
  field.values_.assign(cells, 0.0);
  field.conductor_.assign(cells, 0);

  // Unknown numbering over dielectric rows.
  std::vector<int> unknown(cells, -1);
  int n_unknown = 0;
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      const std::size_t c = field.index(i, j);
      if (field.eps(j) == 0.0) {
        field.conductor_[c] = 1;
      } else {
        unknown[c] = n_unknown++;
      }
    }
  }

  const double es = field.eps_source_;
  const auto G = [&](double rho, double z) { return field.free_part(rho, z); };

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n_unknown) * 5);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_unknown);

  for (int j = 0; j < nz; ++j) {
    const double ej = field.eps(j);
    if (ej == 0.0) continue;
    const double zc = field.z_center(j);
    for (int i = 0; i < nr; ++i) {
      const int row = unknown[field.index(i, j)];
      const double rc = field.rho_center(i);
      const double Gc = G(rc, zc);
      double diag = 0.0;
      double b = 0.0;  // L g1 = b, the matrix holds -L

      // Radial faces. The axis face has zero area.
      const double a_out = 2.0 * pi * (i + 1) * dr * dz;
      const double a_in = 2.0 * pi * i * dr * dz;
      if (i > 0) {
        const double t = a_in * ej / dr;
        const double ts = a_in * es / dr;
        const double dG = G(rc - dr, zc) - Gc;
        triplets.emplace_back(row, unknown[field.index(i - 1, j)], -t);
        diag += t;
        b += (ts - t) * dG;
      }
      if (i + 1 < nr) {
        const double t = a_out * ej / dr;
        const double ts = a_out * es / dr;
        const double dG = G(rc + dr, zc) - Gc;
        triplets.emplace_back(row, unknown[field.index(i + 1, j)], -t);
        diag += t;
        b += (ts - t) * dG;
      } else {
        // Outer cylinder: g1 ~ 1/r, Robin condition dg1/dn + (n.r/r^2) g1 = 0.
        const double rf = (i + 1) * dr;
        const double dist = std::hypot(rf, zc - src.z);
        const double a = 0.5 * dr * (rf / dist) / dist;
        diag += a_out * ej / (0.5 * dr) * a / (1.0 + a);
        const double t = a_out * ej / dr;
        const double ts = a_out * es / dr;
        b += (ts - t) * (G(rc + dr, zc) - Gc);
      }

      // Axial faces.
      const double a_z = 2.0 * pi * rc * dr;
      for (int side : {-1, 1}) {
        const int jn = j + side;
        const double ts = a_z * es / dz;
        const double dG = G(rc, zc + side * dz) - Gc;
        if (jn < 0 || jn >= nz) {
          const double zf = zc + side * 0.5 * dz;
          const double dist = std::hypot(rc, zf - src.z);
          const double a = 0.5 * dz * (side * (zf - src.z) / dist) / dist;
          diag += a_z * ej / (0.5 * dz) * std::max(a, 0.0) / (1.0 + std::max(a, 0.0));
          const double t = a_z * ej / dz;
          b += (ts - t) * dG;
          continue;
        }
        const double en = field.eps(jn);
        if (en == 0.0) {
          // Grounded conductor face: the full g vanishes there.
          const double t = a_z * ej / (0.5 * dz);
          diag += t;
          b += ts * dG + t * Gc;
          continue;
        }
        const double t = a_z / (0.5 * dz / ej + 0.5 * dz / en);
        triplets.emplace_back(row, unknown[field.index(i, jn)], -t);
        diag += t;
        b += (ts - t) * dG;
      }
      triplets.emplace_back(row, row, diag);
      rhs[row] = -b;
    }
  }

  Eigen::SparseMatrix<double> A(n_unknown, n_unknown);
  A.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
      solver;
  solver.setTolerance(grid.tol);
  solver.setMaxIterations(std::max(20 * (nr + nz), 2000));
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::SolverDiverged, "incomplete Cholesky factorisation failed");
  const Eigen::VectorXd x = solver.solve(rhs);
  field.iterations_ = static_cast<int>(solver.iterations());
  field.residual_ = solver.error();
  if (solver.info() != Eigen::Success || !(field.residual_ <= grid.tol)) {
    std::ostringstream os;
    os << "conjugate gradient stopped at residual " << field.residual_ << " after "
       << field.iterations_ << " iterations (tol " << grid.tol << ")";
    fail(ErrorKind::SolverDiverged, os.str());
  }
  for (std::size_t c = 0; c < cells; ++c)
    if (unknown[c] >= 0) field.values_[c] = x[unknown[c]];
  return field;
}

}  // namespace greens::oracle
