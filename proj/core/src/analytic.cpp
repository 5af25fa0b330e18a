#include "greens/analytic.hpp"

#include <sstream>

namespace greens::analytic {

namespace {

using constants::pi;
constexpr const char* kModule = "analytic-greens";

[[noreturn]] void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, kModule, detail);
}

std::string describe(Point3 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

void require_distinct(Point3 r, Point3 src) {
  if (r == src) fail(ErrorKind::CoincidentPoints, "r == r' = " + describe(r));
}

void require_finite(Point3 p) {
  if (!p.finite()) fail(ErrorKind::InvalidArgument, "non-finite point " + describe(p));
}

/// 1/(4 pi |a - b|) for unit permittivity.
double unit_kernel(Point3 a, Point3 b) { return 1.0 / (4.0 * pi * distance(a, b)); }

bool on_plate(Point3 p, double R) { return p.z == 0.0 && p.rho() >= R; }

/// (1/D) [1 + (2 lambda / pi) atan(F / D)], written so that the lambda = -1
/// branch keeps full precision when F/D is large and stays finite at D = 0.
double hole_bracket(double D, double F, int lambda) {
  if (lambda > 0) return (1.0 + (2.0 / pi) * std::atan2(F, D)) / D;
  if (lambda < 0) {
    if (D == 0.0) return 2.0 / (pi * F);
    return (2.0 / pi) * std::atan2(D, F) / D;
  }
  return 1.0 / D;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

GreensValue free_space_g(Point3 r, Point3 src, double eps) {
  require_finite(r);
  require_finite(src);
  if (!(eps >= 1.0)) fail(ErrorKind::InvalidArgument, "eps must be >= 1");
  require_distinct(r, src);
  return {unit_kernel(r, src) / eps, 0.0};
}

GreensValue half_space_g(Point3 r, Point3 src, Permittivity eps1,
                         Permittivity eps2) {
  require_finite(r);
  require_finite(src);
  require_distinct(r, src);
  if (src.z < 0.0) {
    return half_space_g(mirror_z(r), mirror_z(src), eps2, eps1);
  }
  // Source now in medium 1 (or on the interface).
  if (eps1.is_conductor()) return {0.0, 0.0};
  const double e1 = eps1.value();
  if (r.z >= 0.0) {
    const double reflection = contrast(eps1, eps2);
    double value = unit_kernel(r, src);
    if (reflection != 0.0) value += reflection * unit_kernel(r, mirror_z(src));
    return {value / e1, 0.0};
  }
  if (eps2.is_conductor()) return {0.0, 0.0};
  return {2.0 / (e1 + eps2.value()) * unit_kernel(r, src), 0.0};
}

GreensValue half_space_g1(Point3 r, Point3 src, Permittivity eps1,
                          Permittivity eps2) {
  require_finite(r);
  require_finite(src);
  if ((r.z > 0.0 && src.z < 0.0) || (r.z < 0.0 && src.z > 0.0))
    fail(ErrorKind::OutOfRegion, "scattering part needs both points on one side");
  if (r.z < 0.0 || src.z < 0.0)
    return half_space_g1(mirror_z(r), mirror_z(src), eps2, eps1);
  if (eps1.is_conductor())
    fail(ErrorKind::OutOfRegion, "points lie inside the perfect conductor");
  if (src.z == 0.0 && r == src)
    fail(ErrorKind::OnSurface, "coincident point on the interface");
  const double reflection = contrast(eps1, eps2);
  return {reflection * unit_kernel(r, mirror_z(src)) / eps1.value(), 0.0};
}

HoleAux plate_hole_aux(Point3 r, Point3 src, double R) {
  require_finite(r);
  require_finite(src);
  if (!(R > 0.0)) fail(ErrorKind::InvalidArgument, "hole radius must be > 0");
  if (r.z < 0.0)
    fail(ErrorKind::InvalidArgument, "field point must satisfy z >= 0");
  if (on_plate(r, R)) fail(ErrorKind::OnPlate, "field point " + describe(r));
  if (on_plate(src, R)) fail(ErrorKind::OnPlate, "source point " + describe(src));

  const double z = r.z;
  const double zp = src.z;
  const double rho = r.rho();
  const double rhop = src.rho();
  const double R2 = R * R;

  const double P = rho * rho + z * z - R2;
  const double Pp = rhop * rhop + zp * zp - R2;
  const double Q = std::sqrt((z * z + (rho - R) * (rho - R)) *
                             (z * z + (rho + R) * (rho + R)));
  const double Qp = std::sqrt((zp * zp + (rhop - R) * (rhop - R)) *
                              (zp * zp + (rhop + R) * (rhop + R)));
  const double mixed = 4.0 * R2 * z * zp;

  HoleAux aux;
  aux.F_plus = std::sqrt(std::max(P * Pp - mixed + Q * Qp, 0.0)) / (std::sqrt(2.0) * R);
  aux.F_minus = std::sqrt(std::max(P * Pp + mixed + Q * Qp, 0.0)) / (std::sqrt(2.0) * R);

  // The D's use the squared axial offset so that D_minus = |r - r'|.
  const double dx = r.x - src.x;
  const double dy = r.y - src.y;
  const double lateral = dx * dx + dy * dy;
  aux.D_minus = std::sqrt(lateral + (z - zp) * (z - zp));
  aux.D_plus = std::sqrt(lateral + (z + zp) * (z + zp));

  if (zp >= 0.0) {
    aux.lambda_plus = sign(zp * P + z * Pp);
    aux.lambda_minus = 1;
  } else {
    aux.lambda_plus = -1;
    aux.lambda_minus = sign(zp * P - z * Pp);
  }
  return aux;
}

GreensValue plate_hole_g(Point3 r, Point3 src, double R) {
  require_finite(r);
  require_finite(src);
  if (!(R >= 0.0)) fail(ErrorKind::InvalidArgument, "hole radius must be >= 0");
  if (on_plate(r, R)) fail(ErrorKind::OnPlate, "field point " + describe(r));
  if (on_plate(src, R)) fail(ErrorKind::OnPlate, "source point " + describe(src));
  require_distinct(r, src);
  if (r.z < 0.0) return plate_hole_g(mirror_z(r), mirror_z(src), R);

  if (R == 0.0) {
    // Full grounded plane: image charge on the same side, nothing leaks.
    if (src.z < 0.0) return {0.0, 0.0};
    return {unit_kernel(r, src) - unit_kernel(r, mirror_z(src)), 0.0};
  }

  const HoleAux aux = plate_hole_aux(r, src, R);
  const double value =
      (hole_bracket(aux.D_minus, aux.F_minus, aux.lambda_minus) -
       hole_bracket(aux.D_plus, aux.F_plus, aux.lambda_plus)) /
      (8.0 * pi);
  return {value, 0.0};
}

GreensValue plate_hole_self_g1(Point3 r, double R) {
  require_finite(r);
  if (!(R >= 0.0)) fail(ErrorKind::InvalidArgument, "hole radius must be >= 0");
  if (on_plate(r, R)) fail(ErrorKind::OnPlate, "point " + describe(r));
  const double z = std::abs(r.z);
  if (R == 0.0) return {-1.0 / (8.0 * pi * z), 0.0};

  const double rho = r.rho();
  const double P = rho * rho + z * z - R * R;
  const double Q = std::sqrt((z * z + (rho - R) * (rho - R)) *
                             (z * z + (rho + R) * (rho + R)));
  // Direct term: -(1/(8 pi D)) (2/pi) (D/F_minus) with F_minus = Q/R at r = r'.
  const double direct = -R / (4.0 * pi * pi * Q);
  // Image term with D_plus = 2z, F_plus = |P|/R and lambda_plus = sgn(P).
  double image;
  if (P > 0.0) {
    image = -(1.0 + (2.0 / pi) * std::atan(P / (2.0 * z * R))) / (16.0 * pi * z);
  } else if (P < 0.0) {
    const double atan_over_z =
        z > 0.0 ? std::atan(2.0 * z * R / -P) / z : 2.0 * R / -P;
    image = -atan_over_z / (8.0 * pi * pi);
  } else {
    image = -1.0 / (16.0 * pi * z);
  }
  return {direct + image, 0.0};
}

GreensValue plate_hole_onaxis_self_g1(double z, double R) {
  if (!std::isfinite(z)) fail(ErrorKind::InvalidArgument, "z must be finite");
  if (!(R > 0.0) || !std::isfinite(R))
    fail(ErrorKind::InvalidArgument, "hole radius must be > 0");
  const double az = std::abs(z);
  const double atan_term = az > 0.0 ? std::atan(az / R) / az : 1.0 / R;
  return {-(atan_term + R / (az * az + R * R)) / (4.0 * pi * pi), 0.0};
}

}  // namespace greens::analytic
