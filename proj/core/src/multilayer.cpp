#include "greens/multilayer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace greens::multilayer {

namespace {

using constants::pi;
constexpr const char* kModule = "multilayer";
constexpr double kEps = std::numeric_limits<double>::epsilon();

[[noreturn]] void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, kModule, detail);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and > 0, got " << v;
    fail(ErrorKind::InvalidArgument, os.str());
  }
}

/// 1 - R exp(-x), exact for R = 1 at small x.
double one_minus_reflected(double R, double x) {
  return (1.0 - R) - R * std::expm1(-x);
}

/// Integrand of the scattering part for z >= z0:
///   exp(-k (z - z0)) [ A B / C - 1 ],
/// A = 1 - R1 exp(-k(d + 2 z0)), B = 1 - R3 exp(-k(d - 2 z)),
/// C = 1 - R1 R3 exp(-2 k d).
struct ScatteringIntegrand {
  double z;
  double z0;
  double d;
  double R1;
  double R3;

  double operator()(double k) const {
    const double x1 = k * (d + 2.0 * z0);
    const double x3 = k * (d - 2.0 * z);
    const double x13 = 2.0 * k * d;
    const double rr = R1 * R3;
    const double C = one_minus_reflected(rr, x13);
    double bracket;
    if (C >= 0.25) {
      const double a = std::exp(-x1);
      const double b = std::exp(-x3);
      const double c = std::exp(-x13);
      bracket = (-a * R1 - b * R3 + (a * b + c) * rr) / C;
    } else {
      const double A = one_minus_reflected(R1, x1);
      const double B = one_minus_reflected(R3, x3);
      bracket = A * B / C - 1.0;
    }
    return std::exp(-k * (z - z0)) * bracket;
  }
};

void require_in_gap(double z, double d, const char* name) {
  if (!std::isfinite(z) || !(z > -0.5 * d) || !(z < 0.5 * d)) {
    std::ostringstream os;
    os << name << "=" << z << " outside the gap (-" << 0.5 * d << ", " << 0.5 * d
       << ")";
    fail(ErrorKind::OutOfRegion, os.str());
  }
}

/// Repeated pairwise averaging (Euler transform) of the last partial sums of
/// an alternating series. Returns the final value and the change made by the
/// last level.
std::pair<double, double> averaged_limit(const std::vector<double>& sums,
                                         std::size_t levels) {
  levels = std::min(levels, sums.size() - 1);
  std::vector<double> row(sums.end() - static_cast<std::ptrdiff_t>(levels + 1),
                          sums.end());
  double previous = row.back();
  for (std::size_t level = 0; level < levels; ++level) {
    previous = row.back();
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
  }
  return {row.back(), std::abs(row.back() - previous)};
}

}  // namespace

CavityCoeffs reflection_coeffs(Permittivity eps1, Permittivity eps2,
                               Permittivity eps3) {
  if (eps2.is_conductor()) fail(ErrorKind::InvalidArgument, "gap medium eps2 must be a dielectric");
  return {contrast(eps1, eps2), contrast(eps3, eps2)};
}

GreensValue cavity_g1_general(double z, double z0, double rho, double d,
                              Permittivity eps1, Permittivity eps2,
                              Permittivity eps3, const QuadratureSpec& spec) {
  require_positive(d, "d");
  if (!(rho >= 0.0) || !std::isfinite(rho))
    fail(ErrorKind::InvalidArgument, "rho must be finite and >= 0");
  require_in_gap(z, d, "z");
  require_in_gap(z0, d, "z0");
  if (z < z0) {
    // Reflect through the mid-plane so that z >= z0; the walls swap roles.
    return cavity_g1_general(-z, -z0, rho, d, eps3, eps2, eps1, spec);
  }

  const CavityCoeffs c = reflection_coeffs(eps1, eps2, eps3);
  const double e2 = eps2.value();
  if (c.R1 == 0.0 && c.R3 == 0.0) return {0.0, 0.0};

  const ScatteringIntegrand f{z, z0, d, c.R1, c.R3};
  // Nearest image sits at distance min(d + 2 z0, d - 2 z) + (z - z0).
  const double image_length = std::min(d + 2.0 * z0, d - 2.0 * z) + (z - z0);
  const quadrature::Estimate est =
      hankel_integral(f, rho, spec, std::max(image_length, 1e-3 * d));
  const double prefactor = 1.0 / (4.0 * pi * e2);
  return {prefactor * est.value, prefactor * est.abs_err};
}

GreensValue cavity_g_general(double z, double z0, double rho, double d,
                             Permittivity eps1, Permittivity eps2,
                             Permittivity eps3, const QuadratureSpec& spec) {
  const GreensValue g1 = cavity_g1_general(z, z0, rho, d, eps1, eps2, eps3, spec);
  const double separation = std::hypot(rho, z - z0);
  if (separation == 0.0) fail(ErrorKind::CoincidentPoints, "rho = 0 and z = z0");
  const double bulk = 1.0 / (4.0 * pi * eps2.value() * separation);
  return {bulk + g1.value, g1.abs_err + kEps * bulk};
}

GreensValue cavity_g_midpoint(double rho, double d, Permittivity eps1,
                              Permittivity eps2, Permittivity eps3,
                              const QuadratureSpec& spec) {
  require_positive(rho, "rho");
  return cavity_g_general(0.0, 0.0, rho, d, eps1, eps2, eps3, spec);
}

namespace {

struct SeriesTerms {
  double rho;
  double d;
  double x;  // R1 R3
  double s;  // R1 + R3

  double distance(int m) const { return std::hypot(m * d, rho); }
  /// m-th image term (m >= 1) of the mid-plane series, without 1/(4 pi eps2).
  double term(int m) const {
    const int n = m / 2;
    const double weight = std::pow(x, n);
    if (m % 2 == 0) return 2.0 * weight / distance(m);
    return -weight * s / distance(m);
  }
};

GreensValue sum_series(const SeriesTerms& t, double eps2, int n_max,
                       bool adaptive, const QuadratureSpec& spec) {
  const double prefactor = 1.0 / (4.0 * pi * eps2);
  const double ax = std::abs(t.x);

  if (ax < 1.0) {
    double sum = 1.0 / t.rho;
    double magnitude = sum;
    sum += t.term(1);
    magnitude += std::abs(t.term(1));
    const int cap = adaptive ? 200'000'000 : n_max;
    int n = 0;
    double bound = 0.0;
    for (n = 1; n <= cap; ++n) {
      const double even = t.term(2 * n);
      const double odd = t.term(2 * n + 1);
      sum += even + odd;
      magnitude += std::abs(even) + std::abs(odd);
      // sum_{j > n} |x|^j (2 + |s|) / dist(2j) <= tail below
      bound = std::pow(ax, n + 1) / (1.0 - ax) * (2.0 + std::abs(t.s)) /
              t.distance(2 * n + 2);
      if (adaptive) {
        const double tol =
            std::max(spec.abs_tol / prefactor, spec.rel_tol * std::abs(sum));
        if (bound <= tol) break;
      }
      if (ax == 0.0) {
        bound = 0.0;
        if (adaptive) break;
      }
    }
    const double rounding = 4.0 * kEps * magnitude;
    return {prefactor * sum, prefactor * (bound + rounding)};
  }

  if (t.x == 1.0 && t.s < 0.0)
    fail(ErrorKind::InvalidArgument, "R1 = R3 = -1 gives a divergent image series");

  // |R1 R3| = 1: alternating series. With x = 1 the signs alternate term by
  // term; with x = -1 the odd terms vanish and the even ones alternate.
  if (adaptive) n_max = 128;
  std::vector<double> sums;
  double sum = 1.0 / t.rho;
  double magnitude = sum;
  const bool by_term = t.x > 0.0;
  if (by_term) sums.push_back(sum);
  for (int m = 1; m <= 2 * n_max + 1; ++m) {
    const double term = t.term(m);
    sum += term;
    magnitude += std::abs(term);
    if (by_term || m % 2 == 1) sums.push_back(sum);
  }
  const auto [value, change] = averaged_limit(sums, 24);
  const double rounding = 8.0 * kEps * magnitude;
  return {prefactor * value, prefactor * (change + rounding)};
}

}  // namespace

GreensValue cavity_g_series(double rho, double d, CavityCoeffs coeffs,
                            double eps2, int n_max) {
  require_positive(rho, "rho");
  require_positive(d, "d");
  if (!(eps2 >= 1.0)) fail(ErrorKind::InvalidArgument, "eps2 must be >= 1");
  if (n_max < 1) fail(ErrorKind::InvalidArgument, "n_max must be >= 1");
  if (std::abs(coeffs.R1) > 1.0 || std::abs(coeffs.R3) > 1.0)
    fail(ErrorKind::InvalidArgument, "reflection coefficients must lie in [-1, 1]");
  const SeriesTerms t{rho, d, coeffs.R1 * coeffs.R3, coeffs.R1 + coeffs.R3};
  return sum_series(t, eps2, n_max, false, QuadratureSpec{});
}

GreensValue cavity_g_series(double rho, double d, CavityCoeffs coeffs,
                            double eps2, const QuadratureSpec& spec) {
  require_positive(rho, "rho");
  require_positive(d, "d");
  spec.validate();
  if (!(eps2 >= 1.0)) fail(ErrorKind::InvalidArgument, "eps2 must be >= 1");
  if (std::abs(coeffs.R1) > 1.0 || std::abs(coeffs.R3) > 1.0)
    fail(ErrorKind::InvalidArgument, "reflection coefficients must lie in [-1, 1]");
  const SeriesTerms t{rho, d, coeffs.R1 * coeffs.R3, coeffs.R1 + coeffs.R3};
  return sum_series(t, eps2, 1, true, spec);
}

AsymptoticG cavity_asymptotic(double rho, double d, double eps2) {
  require_positive(rho, "rho");
  require_positive(d, "d");
  if (!(eps2 >= 1.0)) fail(ErrorKind::InvalidArgument, "eps2 must be >= 1");
  AsymptoticG out;
  out.value = std::sqrt(8.0 / (rho * d)) * std::exp(-pi * rho / d) / (4.0 * pi * eps2);
  out.short_range = rho < 3.0 * d;
  return out;
}

}  // namespace greens::multilayer
