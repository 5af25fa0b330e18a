#include "greens/core.hpp"

#include <algorithm>
#include <sstream>

namespace greens {

namespace {

constexpr const char* kModule = "core";

[[noreturn]] void invalid(const std::string& detail) {
  throw Error(ErrorKind::InvalidArgument, kModule, detail);
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::OnPlate: return "OnPlate";
    case ErrorKind::OutOfRegion: return "OutOfRegion";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonPositiveWavenumber: return "NonPositiveWavenumber";
    case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorKind::UnsupportedGeometry: return "UnsupportedGeometry";
    case ErrorKind::OnSurface: return "OnSurface";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::PointInsideBody: return "PointInsideBody";
    case ErrorKind::SolverDiverged: return "SolverDiverged";
    case ErrorKind::SourceOnInterface: return "SourceOnInterface";
    case ErrorKind::GridMisaligned: return "GridMisaligned";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string module, const std::string& detail)
    : std::runtime_error(module + ": " + std::string(to_string(kind)) + ": " +
                         detail),
      kind_(kind),
      module_(std::move(module)),
      detail_(detail) {}

bool is_numerical(ErrorKind kind) noexcept {
  return kind == ErrorKind::NoConvergence || kind == ErrorKind::SolverDiverged;
}

double dot(Point3 a, Point3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }

double norm(Point3 a) noexcept { return std::sqrt(dot(a, a)); }

double distance(Point3 a, Point3 b) noexcept { return norm(a - b); }

Point3 mirror_z(Point3 p) noexcept { return {p.x, p.y, -p.z}; }

Permittivity Permittivity::finite(double eps) {
  if (!std::isfinite(eps) || eps < 1.0) {
    std::ostringstream os;
    os << "relative permittivity must be finite and >= 1, got " << eps;
    invalid(os.str());
  }
  Permittivity p;
  p.value_ = eps;
  p.conductor_ = false;
  return p;
}

Permittivity Permittivity::conductor() noexcept {
  Permittivity p;
  p.conductor_ = true;
  p.value_ = 0.0;
  return p;
}

double Permittivity::value() const {
  if (conductor_) invalid("perfect conductor has no finite permittivity");
  return value_;
}

double contrast(Permittivity a, Permittivity b) {
  if (a.is_conductor() && b.is_conductor())
    invalid("contrast between two perfect conductors is undefined");
  if (a.is_conductor()) return 1.0;
  if (b.is_conductor()) return -1.0;
  return (a.value() - b.value()) / (a.value() + b.value());
}

double DrudeStatic::eps_background() const noexcept {
  return 1.0 + (omega_p_bound * omega_p_bound) / (omega_0 * omega_0);
}

double DrudeStatic::screening_wavenumber() const noexcept {
  return omega_p / (beta * std::sqrt(eps_background()));
}

void DrudeStatic::validate() const {
  if (!(omega_p >= 0.0) || !std::isfinite(omega_p))
    invalid("omega_p must be finite and >= 0");
  if (!(omega_p_bound >= 0.0) || !std::isfinite(omega_p_bound))
    invalid("omega_p_bound must be finite and >= 0");
  if (!(omega_0 > 0.0) || !std::isfinite(omega_0))
    invalid("omega_0 must be finite and > 0");
  if (!(beta > 0.0) || !std::isfinite(beta))
    invalid("beta must be finite and > 0");
  if (!(damping_bound >= 0.0) || !(damping_free >= 0.0))
    invalid("damping rates must be >= 0");
}

PolarizabilityTensor PolarizabilityTensor::isotropic(double alpha) noexcept {
  return diagonal(alpha, alpha, alpha);
}

PolarizabilityTensor PolarizabilityTensor::diagonal(double ax, double ay,
                                                    double az) noexcept {
  PolarizabilityTensor t;
  t.m = {ax, 0.0, 0.0, 0.0, ay, 0.0, 0.0, 0.0, az};
  return t;
}

double PolarizabilityTensor::contract(Point3 a, Point3 b) const noexcept {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i] * (*this)(i, j) * b[j];
  return s;
}

void PolarizabilityTensor::validate() const {
  double scale = 0.0;
  for (double v : m) {
    if (!std::isfinite(v)) invalid("polarizability entries must be finite");
    scale = std::max(scale, std::abs(v));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > 1e-12 * scale)
        invalid("polarizability tensor must be symmetric");
  // Positive semi-definite iff every principal minor is non-negative.
  const double tol = 1e-12;
  auto a = [this](int i, int j) { return (*this)(i, j); };
  for (int i = 0; i < 3; ++i)
    if (a(i, i) < -tol * scale) invalid("polarizability tensor must be PSD");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (a(i, i) * a(j, j) - a(i, j) * a(j, i) < -tol * scale * scale)
        invalid("polarizability tensor must be PSD");
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  if (det < -tol * scale * scale * scale)
    invalid("polarizability tensor must be PSD");
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) invalid("rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) invalid("abs_tol must be >= 0");
  if (max_panels < 8) invalid("max_panels must be >= 8");
  if (accel_order < 1) invalid("accel_order must be >= 1");
}

namespace {

struct Validator {
  void operator()(const FreeSpace& g) const {
    if (!std::isfinite(g.eps) || g.eps < 1.0)
      invalid("free-space permittivity must be >= 1");
  }
  void operator()(const HalfSpace& g) const {
    if (g.eps1.is_conductor() && g.eps2.is_conductor())
      invalid("half-space needs at least one dielectric medium");
  }
  void operator()(const ThreeLayerCavity& g) const {
    if (g.eps2.is_conductor()) invalid("cavity gap eps2 must be a dielectric");
    if (!(g.d > 0.0) || !std::isfinite(g.d)) invalid("cavity gap d must be > 0");
  }
  void operator()(const PlateWithHole& g) const {
    if (!(g.radius >= 0.0) || !std::isfinite(g.radius))
      invalid("hole radius R must be >= 0");
  }
  void operator()(const NonlocalBulk& g) const { g.drude.validate(); }
  void operator()(const DiluteBody& g) const {
    g.alpha.validate();
    if (!std::isfinite(g.background_eps) || g.background_eps < 1.0)
      invalid("background_eps must be >= 1");
    for (const auto& region : g.regions) {
      if (const auto* box = std::get_if<BoxRegion>(&region)) {
        for (int k = 0; k < 3; ++k)
          if (!(box->lo[k] < box->hi[k])) invalid("box region needs lo < hi");
        if (!(box->density >= 0.0) || !std::isfinite(box->density))
          invalid("number density must be finite and >= 0");
      } else {
        const auto& cell = std::get<PointCell>(region);
        if (!cell.center.finite()) invalid("cell centre must be finite");
        if (!(cell.volume > 0.0)) invalid("cell volume must be > 0");
        if (!(cell.density >= 0.0) || !std::isfinite(cell.density))
          invalid("number density must be finite and >= 0");
      }
    }
  }
};

}  // namespace

void validate(const Geometry& geometry) { std::visit(Validator{}, geometry); }

std::string_view geometry_name(const Geometry& geometry) noexcept {
  struct Namer {
    std::string_view operator()(const FreeSpace&) const { return "free_space"; }
    std::string_view operator()(const HalfSpace&) const { return "half_space"; }
    std::string_view operator()(const ThreeLayerCavity&) const {
      return "three_layer_cavity";
    }
    std::string_view operator()(const PlateWithHole&) const {
      return "plate_with_hole";
    }
    std::string_view operator()(const NonlocalBulk&) const {
      return "nonlocal_bulk";
    }
    std::string_view operator()(const DiluteBody&) const { return "dilute_body"; }
  };
  return std::visit(Namer{}, geometry);
}

}  // namespace greens
