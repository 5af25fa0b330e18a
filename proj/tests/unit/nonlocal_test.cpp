#include <gtest/gtest.h>

#include <cmath>

#include "greens/nonlocal.hpp"

namespace greens::nonlocal {
namespace {

using constants::elementary_charge;
using constants::epsilon0;
using constants::pi;

DrudeStatic gold_like() {
  DrudeStatic p;
  p.omega_p = 1.37e16;
  p.omega_p_bound = 8e15;
  p.omega_0 = 1e16;
  p.beta = 1.1e6;
  return p;
}

TEST(Nonlocal, LongitudinalPermittivity) {
  const DrudeStatic p = gold_like();
  const double k = 3e9;
  const double eps = eps_longitudinal_static(k, p);
  EXPECT_NEAR(eps, p.eps_background() + std::pow(p.omega_p / (p.beta * k), 2), 1e-12 * eps);
  EXPECT_NEAR(inverse_eps_longitudinal_static(k, p) * eps, 1.0, 1e-14);
  EXPECT_EQ(inverse_eps_longitudinal_static(0.0, p), 0.0);
  EXPECT_THROW(eps_longitudinal_static(0.0, p), Error);
}

TEST(Nonlocal, ClosedFormIsYukawa) {
  const DrudeStatic p = gold_like();
  const double r = 2e-10;
  const double ks = p.screening_wavenumber();
  const double q = elementary_charge;
  const double expected = q * q * std::exp(-ks * r) / (4.0 * pi * epsilon0 * p.eps_background() * r);
  EXPECT_NEAR(screened_potential(r, q, q, p) / expected, 1.0, 1e-14);
  EXPECT_NEAR(screened_green(r, p) * 4.0 * pi * p.eps_background() * r, std::exp(-ks * r), 1e-15);
}

TEST(Nonlocal, NoCarriersIsBareCoulombInBackground) {
  DrudeStatic p = gold_like();
  p.omega_p = 0.0;
  const double r = 1e-9;
  EXPECT_NEAR(screened_green(r, p), 1.0 / (4.0 * pi * p.eps_background() * r), 1e-20);
}

TEST(Nonlocal, QuadratureMatchesClosedForm) {
  const DrudeStatic p = gold_like();
  const double ks = p.screening_wavenumber();
  for (double x : {0.01, 0.3, 1.0, 4.0}) {
    const double r = x / ks;
    const double closed = screened_potential(r, 1.0, -1.0, p);
    const EnergyEstimate n = screened_potential_numeric(r, 1.0, -1.0, p);
    EXPECT_NEAR(n.value / closed, 1.0, 1e-9) << x;
  }
}

TEST(Nonlocal, RejectsBadDistance) {
  EXPECT_THROW(screened_potential(0.0, 1.0, 1.0, gold_like()), Error);
  EXPECT_THROW(screened_potential_numeric(-1.0, 1.0, 1.0, gold_like()), Error);
}

}  // namespace
}  // namespace greens::nonlocal
