#pragma once

// Shared domain types for static electrostatic Green's functions: points,
// charges, permittivities, geometry descriptions and the error taxonomy.
//
// All lengths are in meters, charges in coulombs, energies in joules.
// Green's functions g(r, r') solve div(eps grad g) = -delta(r - r') and
// therefore carry units of 1/m.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace greens {

namespace constants {
inline constexpr double pi = std::numbers::pi;
/// Vacuum permittivity in F/m (CODATA 2018).
inline constexpr double epsilon0 = 8.8541878128e-12;
/// Elementary charge in C (exact, SI 2019).
inline constexpr double elementary_charge = 1.602176634e-19;
}  // namespace constants

enum class ErrorKind {
  InvalidArgument,
  CoincidentPoints,
  OnPlate,
  OutOfRegion,
  NoConvergence,
  NonPositiveWavenumber,
  NonPositiveDistance,
  UnsupportedGeometry,
  OnSurface,
  StepTooLarge,
  PointInsideBody,
  SolverDiverged,
  SourceOnInterface,
  GridMisaligned,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a typed kind and the name of the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Same kind and detail, attributed to another module.
  Error relabel(std::string module) const { return Error(kind_, std::move(module), detail_); }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string detail_;
};

/// Numerical failure (quadrature or linear solver did not reach tolerance).
bool is_numerical(ErrorKind kind) noexcept;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double rho() const noexcept { return std::hypot(x, y); }
  double phi() const noexcept { return std::atan2(y, x); }
  bool finite() const noexcept {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  static Point3 cylindrical(double rho, double phi, double z) noexcept {
    return {rho * std::cos(phi), rho * std::sin(phi), z};
  }

  friend Point3 operator+(Point3 a, Point3 b) noexcept {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Point3 operator-(Point3 a, Point3 b) noexcept {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Point3 operator*(double s, Point3 a) noexcept {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend bool operator==(const Point3&, const Point3&) = default;

  double operator[](int axis) const noexcept {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
  double& operator[](int axis) noexcept {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
};

double dot(Point3 a, Point3 b) noexcept;
double norm(Point3 a) noexcept;

/// Euclidean distance |a - b|.
double distance(Point3 a, Point3 b) noexcept;

/// Image position (x, y, -z) with respect to the plane z = 0.
Point3 mirror_z(Point3 p) noexcept;

struct Charge {
  double q = 0.0;  // C
  Point3 position;
};

/// Relative static permittivity. A perfect conductor is a separate state and
/// never represented by a large finite number.
class Permittivity {
 public:
  Permittivity() = default;
  /// Throws InvalidArgument unless eps >= 1 and finite.
  static Permittivity finite(double eps);
  static Permittivity conductor() noexcept;

  bool is_conductor() const noexcept { return conductor_; }
  /// Finite value; throws InvalidArgument for a conductor.
  double value() const;

  friend bool operator==(const Permittivity&, const Permittivity&) = default;

 private:
  double value_ = 1.0;
  bool conductor_ = false;
};

/// (a - b) / (a + b) with the analytic conductor limits: +1 when a is a
/// conductor, -1 when b is. Both conductors is rejected.
double contrast(Permittivity a, Permittivity b);

struct FreeSpace {
  double eps = 1.0;
};

/// Interface at z = 0; medium 1 fills z > 0, medium 2 fills z < 0.
struct HalfSpace {
  Permittivity eps1;
  Permittivity eps2;
};

/// Gap -d/2 < z < d/2 filled with eps2, bounded by eps1 (z < -d/2) and eps3
/// (z > d/2).
struct ThreeLayerCavity {
  Permittivity eps1;
  Permittivity eps2;
  Permittivity eps3;
  double d = 1.0;
};

/// Perfectly conducting plane z = 0 with a circular hole of radius `radius`
/// centred on the z axis. radius == 0 is the full plate.
struct PlateWithHole {
  double radius = 0.0;
};

/// Static limit of the hydrodynamic Drude model. Damping rates are accepted
/// for completeness and play no role at zero frequency.
struct DrudeStatic {
  double omega_p = 0.0;        // free-carrier plasma frequency, rad/s
  double omega_p_bound = 0.0;  // bound-electron plasma frequency, rad/s
  double omega_0 = 1.0;        // bound transition frequency, rad/s
  double beta = 1.0;           // hydrodynamic velocity, m/s
  double damping_bound = 0.0;  // Gamma, 1/s (unused in statics)
  double damping_free = 0.0;   // gamma, 1/s (unused in statics)

  /// Background permittivity 1 + omega_p_bound^2 / omega_0^2.
  double eps_background() const noexcept;
  /// Screening wavenumber omega_p / (beta sqrt(eps_background)), 1/m.
  double screening_wavenumber() const noexcept;
  void validate() const;
};

struct NonlocalBulk {
  DrudeStatic drude;
};

/// Static polarizability in C m^2 / V, stored row-major.
struct PolarizabilityTensor {
  std::array<double, 9> m{};

  static PolarizabilityTensor isotropic(double alpha) noexcept;
  static PolarizabilityTensor diagonal(double ax, double ay, double az) noexcept;

  double operator()(int i, int j) const noexcept { return m[3 * i + j]; }
  /// a . alpha . b
  double contract(Point3 a, Point3 b) const noexcept;
  /// Throws InvalidArgument unless symmetric (rel 1e-12) and positive
  /// semi-definite.
  void validate() const;
};

/// Axis-aligned box with uniform number density. Bounds may be infinite.
struct BoxRegion {
  Point3 lo;
  Point3 hi;
  double density = 0.0;  // 1/m^3
};

/// A single quadrature cell: a point-like lump of `volume` at `center`.
struct PointCell {
  Point3 center;
  double volume = 0.0;   // m^3
  double density = 0.0;  // 1/m^3
};

using BodyRegion = std::variant<BoxRegion, PointCell>;

struct DiluteBody {
  std::vector<BodyRegion> regions;
  PolarizabilityTensor alpha;
  double background_eps = 1.0;
};

using Geometry = std::variant<FreeSpace, HalfSpace, ThreeLayerCavity,
                              PlateWithHole, NonlocalBulk, DiluteBody>;

/// Throws InvalidArgument on eps < 1, d <= 0, R < 0 and similar violations.
void validate(const Geometry& geometry);

std::string_view geometry_name(const Geometry& geometry) noexcept;

/// A Green's function value with its estimated absolute numerical error.
/// abs_err is exactly zero for closed forms.
struct GreensValue {
  double value = 0.0;    // 1/m
  double abs_err = 0.0;  // 1/m
};

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_panels = 4000;
  int accel_order = 12;

  void validate() const;
};

}  // namespace greens
