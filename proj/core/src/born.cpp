#include "greens/born.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace greens::born {

namespace {

using constants::epsilon0;
using constants::pi;
constexpr const char* kModule = "born";
constexpr unsigned kMaxDepth = 18;

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
using Fn = std::function<double(double)>;

[[noreturn]] void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, kModule, detail);
}

std::string describe(Point3 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

struct Accumulated {
  double value = 0.0;
  double abs_err = 0.0;
  double l1 = 0.0;
};

/// int_0^L f(c + dir x) dx with x = s t / (1 - t), so that a peak of width
/// ~s at the start and any algebraic tail are both resolved.
void integrate_outward(const Fn& f, double c, double dir, double length, double s,
                       double tol, Accumulated& acc) {
  const double t_end = std::isinf(length) ? 1.0 : length / (length + s);
  const auto mapped = [&](double t) {
    const double u = 1.0 - t;
    return f(c + dir * s * t / u) * s / (u * u);
  };
  double err = 0.0;
  double l1 = 0.0;
  const double v = Rule::integrate(mapped, 0.0, t_end, kMaxDepth, tol, &err, &l1);
  acc.value += v;
  acc.abs_err += err;
  acc.l1 += l1;
}

/// int_lo^hi f, split at the given peak positions (clamped into range).
Accumulated integrate_axis(const Fn& f, double lo, double hi,
                           std::vector<double> centers, double scale, double tol) {
  for (double& c : centers) c = std::clamp(c, lo, hi);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  Accumulated acc;
  // Left of the first peak, between consecutive peaks, right of the last.
  if (centers.front() > lo)
    integrate_outward(f, centers.front(), -1.0, centers.front() - lo, scale, tol, acc);
  for (std::size_t i = 0; i + 1 < centers.size(); ++i) {
    const double half = 0.5 * (centers[i + 1] - centers[i]);
    integrate_outward(f, centers[i], 1.0, half, scale, tol, acc);
    integrate_outward(f, centers[i + 1], -1.0, half, scale, tol, acc);
  }
  if (centers.back() < hi)
    integrate_outward(f, centers.back(), 1.0, hi - centers.back(), scale, tol, acc);
  return acc;
}

double distance_to_box(Point3 p, const Point3& lo, const Point3& hi) {
  Point3 q;
  for (int i = 0; i < 3; ++i) q[i] = std::clamp(p[i], lo[i], hi[i]);
  return distance(p, q);
}

bool inside_closed(Point3 p, const BoxRegion& box) {
  for (int i = 0; i < 3; ++i)
    if (p[i] < box.lo[i] || p[i] > box.hi[i]) return false;
  return true;
}

void require_outside(Point3 p, const DiluteBody& body) {
  for (const BodyRegion& region : body.regions) {
    if (const auto* box = std::get_if<BoxRegion>(&region)) {
      if (box->density > 0.0 && inside_closed(p, *box))
        fail(ErrorKind::PointInsideBody, "point " + describe(p) + " lies in the body");
    } else {
      const auto& cell = std::get<PointCell>(region);
      if (cell.density > 0.0 && p == cell.center)
        fail(ErrorKind::PointInsideBody, "point " + describe(p) + " sits on a body cell");
    }
  }
}

void validate_body(const DiluteBody& body) {
  try {
    validate(Geometry{body});
  } catch (const Error& e) {
    throw e.relabel(kModule);
  }
}

/// Integral of a density-weighted kernel k(rB) over every region of the body.
/// `observers` are the points at which k is singular.
Accumulated integrate_body(const std::function<double(Point3)>& kernel,
                           const DiluteBody& body, const std::vector<Point3>& observers,
                           const QuadratureSpec& spec) {
  const double tol = std::max(spec.rel_tol, 1e-10);
  Accumulated total;
  for (const BodyRegion& region : body.regions) {
    if (const auto* cell = std::get_if<PointCell>(&region)) {
      total.value += cell->density * cell->volume * kernel(cell->center);
      continue;
    }
    const BoxRegion& box = std::get<BoxRegion>(region);
    if (box.density == 0.0) continue;

    const auto centers = [&](int axis) {
      std::vector<double> c;
      for (const Point3& o : observers) c.push_back(o[axis]);
      return c;
    };
    // Distance from the observers to the part of the box with the given
    // leading coordinates fixed; it sets the peak width on the next axis.
    const auto scale_for = [&](Point3 fixed_lo, Point3 fixed_hi) {
      double s = std::numeric_limits<double>::infinity();
      for (const Point3& o : observers) s = std::min(s, distance_to_box(o, fixed_lo, fixed_hi));
      return s;
    };

    double inner_err = 0.0;
    const Fn over_z = [&](double z) {
      Point3 lo_z = box.lo, hi_z = box.hi;
      lo_z.z = hi_z.z = z;
      const Fn over_y = [&](double y) {
        Point3 lo_y = lo_z, hi_y = hi_z;
        lo_y.y = hi_y.y = y;
        const Fn over_x = [&](double x) { return kernel(Point3{x, y, z}); };
        const Accumulated ax = integrate_axis(over_x, box.lo.x, box.hi.x, centers(0),
                                              scale_for(lo_y, hi_y), 0.1 * tol);
        return ax.value;
      };
      const Accumulated ay = integrate_axis(over_y, box.lo.y, box.hi.y, centers(1),
                                            scale_for(lo_z, hi_z), 0.1 * tol);
      inner_err = std::max(inner_err, ay.abs_err / std::max(std::abs(ay.value), 1e-300));
      return ay.value;
    };
    const Accumulated az =
        integrate_axis(over_z, box.lo.z, box.hi.z, centers(2), scale_for(box.lo, box.hi), tol);
    if (!std::isfinite(az.value) || az.abs_err > 100.0 * tol * az.l1) {
      std::ostringstream os;
      os << "volume quadrature stalled (estimate " << az.value << ", error " << az.abs_err
         << ")";
      fail(ErrorKind::NoConvergence, os.str());
    }
    total.value += box.density * az.value;
    total.abs_err += box.density * (az.abs_err + 0.1 * tol * az.l1 +
                                    std::min(inner_err, 1.0) * std::abs(az.value));
    total.l1 += box.density * az.l1;
  }
  return total;
}

}  // namespace

double charge_molecule_potential(double qA, Point3 rA, Point3 rB,
                                 const PolarizabilityTensor& alpha) {
  if (!rA.finite() || !rB.finite()) fail(ErrorKind::InvalidArgument, "non-finite position");
  if (rA == rB) fail(ErrorKind::CoincidentPoints, "rA == rB = " + describe(rA));
  const Point3 r = rA - rB;
  const double r2 = dot(r, r);
  return -qA * qA * alpha.contract(r, r) /
         (32.0 * pi * pi * epsilon0 * epsilon0 * r2 * r2 * r2);
}

GreensValue born_scattering_g1(Point3 r, Point3 src, const DiluteBody& body,
                               const QuadratureSpec& spec) {
  spec.validate();
  validate_body(body);
  if (!r.finite() || !src.finite()) fail(ErrorKind::InvalidArgument, "non-finite position");
  require_outside(r, body);
  require_outside(src, body);

  const double eb = body.background_eps;
  const double prefactor = -1.0 / (epsilon0 * 16.0 * pi * pi * eb * eb);
  const auto kernel = [&](Point3 rb) {
    const Point3 a = r - rb;
    const Point3 b = src - rb;
    const double na = norm(a);
    const double nb = norm(b);
    return body.alpha.contract(a, b) / (na * na * na * nb * nb * nb);
  };
  std::vector<Point3> observers{r};
  if (!(src == r)) observers.push_back(src);
  const Accumulated acc = integrate_body(kernel, body, observers, spec);
  return {prefactor * acc.value, std::abs(prefactor) * acc.abs_err};
}

EnergyEstimate charge_body_energy(const Charge& a, const DiluteBody& body,
                                  const QuadratureSpec& spec) {
  spec.validate();
  validate_body(body);
  if (!a.position.finite()) fail(ErrorKind::InvalidArgument, "non-finite position");
  require_outside(a.position, body);
  const double eb = body.background_eps;
  const auto kernel = [&](Point3 rb) {
    return charge_molecule_potential(a.q, a.position, rb, body.alpha) / (eb * eb);
  };
  const Accumulated acc = integrate_body(kernel, body, {a.position}, spec);
  return {acc.value, acc.abs_err};
}

}  // namespace greens::born
