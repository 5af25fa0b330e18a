#include "greens/interactions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "greens/analytic.hpp"
#include "greens/born.hpp"
#include "greens/multilayer.hpp"
#include "greens/nonlocal.hpp"

namespace greens::interactions {

namespace {

using constants::epsilon0;
using constants::pi;
constexpr const char* kModule = "interactions";
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, kModule, detail);
}

std::string describe(Point3 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

void require_finite(const Charge& c) {
  if (!std::isfinite(c.q) || !c.position.finite())
    fail(ErrorKind::InvalidArgument, "non-finite charge or position");
}

double unit_kernel(Point3 v) { return 1.0 / (4.0 * pi * norm(v)); }

/// grad_v of 1/(4 pi |v|).
Point3 unit_kernel_gradient(Point3 v) {
  const double n = norm(v);
  return (-1.0 / (4.0 * pi * n * n * n)) * v;
}

double cavity_half(const ThreeLayerCavity& c) { return 0.5 * c.d; }

double box_distance(Point3 p, const Point3& lo, const Point3& hi) {
  Point3 q;
  for (int i = 0; i < 3; ++i) q[i] = std::clamp(p[i], lo[i], hi[i]);
  return distance(p, q);
}

}  // namespace

std::optional<Permittivity> host_permittivity(const Geometry& geom, Point3 p) {
  return std::visit(
      Overloaded{
          [](const FreeSpace& g) -> std::optional<Permittivity> {
            return Permittivity::finite(g.eps);
          },
          [&](const HalfSpace& g) -> std::optional<Permittivity> {
            if (p.z > 0.0) return g.eps1;
            if (p.z < 0.0) return g.eps2;
            return std::nullopt;
          },
          [&](const ThreeLayerCavity& g) -> std::optional<Permittivity> {
            const double h = cavity_half(g);
            if (p.z < -h) return g.eps1;
            if (p.z > h) return g.eps3;
            if (std::abs(p.z) < h) return g.eps2;
            return std::nullopt;
          },
          [&](const PlateWithHole& g) -> std::optional<Permittivity> {
            if (p.z == 0.0 && p.rho() >= g.radius) return std::nullopt;
            return Permittivity::finite(1.0);
          },
          [](const NonlocalBulk& g) -> std::optional<Permittivity> {
            return Permittivity::finite(g.drude.eps_background());
          },
          [](const DiluteBody& g) -> std::optional<Permittivity> {
            return Permittivity::finite(g.background_eps);
          },
      },
      geom);
}

double distance_to_surface(const Geometry& geom, Point3 p) {
  return std::visit(
      Overloaded{
          [](const FreeSpace&) { return kInf; },
          [&](const HalfSpace&) { return std::abs(p.z); },
          [&](const ThreeLayerCavity& g) {
            return std::abs(std::abs(p.z) - cavity_half(g));
          },
          [&](const PlateWithHole& g) {
            const double rho = p.rho();
            if (rho >= g.radius) return std::abs(p.z);
            return std::hypot(p.z, g.radius - rho);
          },
          [](const NonlocalBulk&) { return kInf; },
          [&](const DiluteBody& g) {
            double s = kInf;
            for (const BodyRegion& region : g.regions) {
              if (const auto* box = std::get_if<BoxRegion>(&region)) {
                if (box->density > 0.0) s = std::min(s, box_distance(p, box->lo, box->hi));
              } else {
                const auto& cell = std::get<PointCell>(region);
                if (cell.density > 0.0) s = std::min(s, distance(p, cell.center));
              }
            }
            return s;
          },
      },
      geom);
}

GreensValue greens_function(const Geometry& geom, Point3 r, Point3 src,
                            const QuadratureSpec& spec) {
  validate(geom);
  if (!r.finite() || !src.finite()) fail(ErrorKind::InvalidArgument, "non-finite point");
  if (r == src) fail(ErrorKind::CoincidentPoints, "r == r' = " + describe(r));
  return std::visit(
      Overloaded{
          [&](const FreeSpace& g) { return analytic::free_space_g(r, src, g.eps); },
          [&](const HalfSpace& g) { return analytic::half_space_g(r, src, g.eps1, g.eps2); },
          [&](const ThreeLayerCavity& g) {
            const double rho = std::hypot(r.x - src.x, r.y - src.y);
            return multilayer::cavity_g_general(r.z, src.z, rho, g.d, g.eps1, g.eps2,
                                                g.eps3, spec);
          },
          [&](const PlateWithHole& g) { return analytic::plate_hole_g(r, src, g.radius); },
          [&](const NonlocalBulk& g) {
            return GreensValue{nonlocal::screened_green(distance(r, src), g.drude), 0.0};
          },
          [&](const DiluteBody& g) {
            const GreensValue g1 = born::born_scattering_g1(r, src, g, spec);
            return GreensValue{unit_kernel(r - src) / g.background_eps + g1.value,
                               g1.abs_err};
          },
      },
      geom);
}

GreensValue scattering_self(const Geometry& geom, Point3 r, const QuadratureSpec& spec) {
  validate(geom);
  if (!r.finite()) fail(ErrorKind::InvalidArgument, "non-finite point");
  return std::visit(
      Overloaded{
          [](const FreeSpace&) { return GreensValue{0.0, 0.0}; },
          [&](const HalfSpace& g) {
            const auto host = host_permittivity(geom, r);
            if (!host) fail(ErrorKind::OnSurface, "charge on the interface " + describe(r));
            if (host->is_conductor())
              fail(ErrorKind::OutOfRegion, "charge inside the conductor " + describe(r));
            return analytic::half_space_g1(r, r, g.eps1, g.eps2);
          },
          [&](const ThreeLayerCavity& g) {
            return multilayer::cavity_g1_general(r.z, r.z, 0.0, g.d, g.eps1, g.eps2, g.eps3,
                                                 spec);
          },
          [&](const PlateWithHole& g) { return analytic::plate_hole_self_g1(r, g.radius); },
          [](const NonlocalBulk&) -> GreensValue {
            fail(ErrorKind::UnsupportedGeometry,
                 "self-energy in the nonlocal bulk is divergent");
          },
          [&](const DiluteBody& g) { return born::born_scattering_g1(r, r, g, spec); },
      },
      geom);
}

InteractionResult self_energy(const Geometry& geom, const Charge& a,
                              const QuadratureSpec& spec) {
  require_finite(a);
  const GreensValue g1 = scattering_self(geom, a.position, spec);
  const double scale = a.q * a.q / (2.0 * epsilon0);
  InteractionResult out;
  out.energy = scale * g1.value;
  out.abs_err = scale * g1.abs_err;

  const auto host = host_permittivity(geom, a.position);
  // The plate is referred to its full plane, so that a vanishing hole gives 1.
  const double s = std::holds_alternative<PlateWithHole>(geom)
                       ? std::abs(a.position.z)
                       : distance_to_surface(geom, a.position);
  if (host && !host->is_conductor() && std::isfinite(s) && s > 0.0 && a.q != 0.0) {
    const double reference = -a.q * a.q / (16.0 * pi * epsilon0 * host->value() * s);
    out.ratio_to_free = out.energy / reference;
  }
  return out;
}

InteractionResult pair_energy(const Geometry& geom, const Charge& a, const Charge& b,
                              const QuadratureSpec& spec) {
  require_finite(a);
  require_finite(b);
  const GreensValue g = greens_function(geom, a.position, b.position, spec);
  const double scale = a.q * b.q / epsilon0;
  InteractionResult out;
  out.energy = scale * g.value;
  out.abs_err = std::abs(scale) * g.abs_err;

  const auto host_a = host_permittivity(geom, a.position);
  const auto host_b = host_permittivity(geom, b.position);
  if (host_a && host_b && *host_a == *host_b && !host_a->is_conductor() &&
      scale != 0.0) {
    const double r = distance(a.position, b.position);
    const double free = scale / (4.0 * pi * host_a->value() * r);
    out.ratio_to_free = out.energy / free;
  }
  return out;
}

double local_field_factor(double eps_host) {
  if (!(eps_host >= 1.0) || !std::isfinite(eps_host))
    fail(ErrorKind::InvalidArgument, "host permittivity must be finite and >= 1");
  return 3.0 * eps_host / (2.0 * eps_host + 1.0);
}

namespace {

/// Closed-form force, if the geometry has one. Without local-field factor.
std::optional<Point3> closed_form_force(const Geometry& geom, const Charge& a,
                                        const std::optional<Charge>& b) {
  const Point3 ra = a.position;
  if (const auto* g = std::get_if<FreeSpace>(&geom)) {
    if (!b) return Point3{};
    const double c = a.q * b->q / (epsilon0 * g->eps);
    return (-c) * unit_kernel_gradient(ra - b->position);
  }
  if (const auto* g = std::get_if<NonlocalBulk>(&geom)) {
    if (!b) return std::nullopt;
    const Point3 v = ra - b->position;
    const double r = norm(v);
    const double ks = g->drude.screening_wavenumber();
    const double u = nonlocal::screened_potential(r, a.q, b->q, g->drude);
    return (u * (1.0 / r + ks) / r) * v;
  }
  if (const auto* g = std::get_if<HalfSpace>(&geom)) {
    const bool upper = ra.z > 0.0;
    const Permittivity host = upper ? g->eps1 : g->eps2;
    const Permittivity other = upper ? g->eps2 : g->eps1;
    const double e = host.value();
    const double kappa = contrast(host, other);
    if (!b) {
      const double z = ra.z;
      const double fz = a.q * a.q * kappa / (16.0 * pi * epsilon0 * e) *
                        (z > 0.0 ? 1.0 : -1.0) / (z * z);
      return Point3{0.0, 0.0, fz};
    }
    const Point3 rb = b->position;
    const double c = a.q * b->q / epsilon0;
    if (rb.z == 0.0) return std::nullopt;
    if ((rb.z > 0.0) == upper) {
      const Point3 grad = unit_kernel_gradient(ra - rb) +
                          kappa * unit_kernel_gradient(ra - mirror_z(rb));
      return (-c / e) * grad;
    }
    if (other.is_conductor()) return Point3{};
    const double t = 2.0 / (e + other.value());
    return (-c * t) * unit_kernel_gradient(ra - rb);
  }
  return std::nullopt;
}

struct Derivative {
  Point3 value;
  double abs_err;
};

Derivative central_gradient(const std::function<double(Point3)>& energy, Point3 p,
                            double h) {
  const auto stencil = [&](int axis, double step) {
    const auto at = [&](double offset) {
      Point3 q = p;
      q[axis] += offset;
      return energy(q);
    };
    return (-at(2.0 * step) + 8.0 * at(step) - 8.0 * at(-step) + at(-2.0 * step)) /
           (12.0 * step);
  };
  Derivative out{{}, 0.0};
  double err2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double fine = stencil(axis, h);
    const double coarse = stencil(axis, 2.0 * h);
    out.value[axis] = fine;
    const double e = std::abs(fine - coarse) / 15.0;
    err2 += e * e;
  }
  out.abs_err = std::sqrt(err2);
  return out;
}

}  // namespace

ForceResult force_on_A(const Geometry& geom, const Charge& a,
                       const std::optional<Charge>& b, bool apply_local_field,
                       std::optional<double> step, const QuadratureSpec& spec) {
  validate(geom);
  require_finite(a);
  if (b) require_finite(*b);
  if (b && a.position == b->position)
    fail(ErrorKind::CoincidentPoints, "charges coincide at " + describe(a.position));

  const auto host = host_permittivity(geom, a.position);
  if (!host) fail(ErrorKind::OnSurface, "charge A on a surface at " + describe(a.position));
  if (host->is_conductor())
    fail(ErrorKind::OutOfRegion, "charge A inside a conductor at " + describe(a.position));
  const double surface = distance_to_surface(geom, a.position);
  if (surface == 0.0)
    fail(ErrorKind::OnSurface, "charge A on a surface at " + describe(a.position));

  ForceResult out;
  out.local_field_factor_applied = apply_local_field ? local_field_factor(host->value()) : 1.0;

  Point3 force;
  if (auto closed = closed_form_force(geom, a, b)) {
    force = *closed;
  } else {
    double reach = surface;
    if (b) reach = std::min(reach, distance(a.position, b->position));
    if (!std::isfinite(reach))
      fail(ErrorKind::UnsupportedGeometry, "no length scale for the self-force");
    const double h = step.value_or(1e-5 * reach);
    if (!(h > 0.0) || !std::isfinite(h))
      fail(ErrorKind::InvalidArgument, "step must be finite and > 0");
    if (4.0 * h >= reach) {
      std::ostringstream os;
      os << "step " << h << " reaches across a surface or charge B (distance " << reach
         << ")";
      fail(ErrorKind::StepTooLarge, os.str());
    }
    const auto energy = [&](Point3 p) {
      Charge moved = a;
      moved.position = p;
      return b ? pair_energy(geom, moved, *b, spec).energy
               : self_energy(geom, moved, spec).energy;
    };
    const Derivative grad = central_gradient(energy, a.position, h);
    force = -1.0 * grad.value;
    const double magnitude = norm(force);
    // Rounding floor: the energy is known to about spec.rel_tol.
    const double floor = 1e-12 * std::abs(energy(a.position)) / reach;
    if (grad.abs_err > 0.01 * magnitude && grad.abs_err > floor) {
      std::ostringstream os;
      os << "Richardson error " << grad.abs_err << " exceeds 1% of |F| = " << magnitude
         << " at step " << h;
      fail(ErrorKind::StepTooLarge, os.str());
    }
    out.abs_err = grad.abs_err;
  }
  out.force = out.local_field_factor_applied * force;
  out.abs_err *= out.local_field_factor_applied;
  return out;
}

double cavity_asymptotic_force(double rho, double d, double eps2, double qA, double qB,
                               bool apply_local_field) {
  const multilayer::AsymptoticG g = multilayer::cavity_asymptotic(rho, d, eps2);
  const double u = qA * qB / epsilon0 * g.value;
  const double factor = apply_local_field ? local_field_factor(eps2) : 1.0;
  return factor * u * (0.5 / rho + pi / d);
}

}  // namespace greens::interactions
