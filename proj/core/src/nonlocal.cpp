#include "greens/nonlocal.hpp"

#include <cmath>
#include <sstream>

#include "greens/quadrature.hpp"

namespace greens::nonlocal {

namespace {

using constants::epsilon0;
using constants::pi;
constexpr const char* kModule = "nonlocal";

void require_distance(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    std::ostringstream os;
    os << "r must be finite and > 0, got " << r;
    throw Error(ErrorKind::NonPositiveDistance, kModule, os.str());
  }
}

void require_params(const DrudeStatic& p) {
  try {
    p.validate();
  } catch (const Error& e) {
    throw e.relabel(kModule);
  }
}

}  // namespace

double eps_longitudinal_static(double k, const DrudeStatic& p) {
  require_params(p);
  if (!(k > 0.0) || !std::isfinite(k)) {
    std::ostringstream os;
    os << "k must be finite and > 0, got " << k;
    throw Error(ErrorKind::NonPositiveWavenumber, kModule, os.str());
  }
  const double ratio = p.omega_p / (p.beta * k);
  return p.eps_background() + ratio * ratio;
}

double inverse_eps_longitudinal_static(double k, const DrudeStatic& p) {
  const double plasma = p.omega_p / p.beta;
  return k * k / (p.eps_background() * k * k + plasma * plasma);
}

double screened_green(double r, const DrudeStatic& p) {
  require_params(p);
  require_distance(r);
  return std::exp(-p.screening_wavenumber() * r) / (4.0 * pi * p.eps_background() * r);
}

double screened_potential(double r, double qA, double qB, const DrudeStatic& p) {
  return qA * qB / epsilon0 * screened_green(r, p);
}

EnergyEstimate screened_potential_numeric(double r, double qA, double qB,
                                          const DrudeStatic& p,
                                          const QuadratureSpec& spec) {
  require_params(p);
  require_distance(r);
  const auto f = [&](double k) {
    return inverse_eps_longitudinal_static(k, p) / (k * r);
  };
  quadrature::Estimate est;
  try {
    const double ks = p.screening_wavenumber();
    est = quadrature::sine_integral(f, r, spec, ks > 0.0 ? 1.0 / ks : 0.0);
  } catch (const Error& e) {
    throw e.relabel(kModule);
  }
  const double prefactor = qA * qB / (4.0 * pi * epsilon0) * (2.0 / pi);
  return {prefactor * est.value, std::abs(prefactor) * est.abs_err};
}

}  // namespace greens::nonlocal
