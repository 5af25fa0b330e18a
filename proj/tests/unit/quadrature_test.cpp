#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "greens/quadrature.hpp"

namespace greens::quadrature {
namespace {

using constants::pi;

TEST(BesselZeros, MatchBoost) {
  for (int n = 1; n <= 40; ++n)
    EXPECT_NEAR(bessel_j0_zero(n), boost::math::cyl_bessel_j_zero(0.0, n), 1e-12 * n);
}

TEST(Wynn, AlternatingHarmonic) {
  std::vector<double> sums;
  double s = 0.0;
  for (int k = 1; k <= 20; ++k) {
    s += (k % 2 ? 1.0 : -1.0) / k;
    sums.push_back(s);
  }
  EXPECT_NEAR(wynn_limit(sums), std::log(2.0), 1e-12);
  WynnEpsilon w(6);
  double last = 0.0;
  for (double v : sums) last = w.push(v);
  EXPECT_NEAR(last, std::log(2.0), 1e-10);
}

TEST(Hankel, LipschitzIntegral) {
  const QuadratureSpec spec;
  for (double rho : {0.0, 0.2, 1.0, 7.0}) {
    const auto e = hankel_integral([](double k) { return std::exp(-0.5 * k); }, rho, spec);
    EXPECT_NEAR(e.value * std::hypot(0.5, rho), 1.0, 1e-11) << rho;
  }
}

TEST(Hankel, ModifiedBessel) {
  const QuadratureSpec spec;
  for (double rho : {0.1, 2.0, 5.0}) {
    const auto e = hankel_integral([](double k) { return k / (k * k + 4.0); }, rho, spec);
    EXPECT_NEAR(e.value / boost::math::cyl_bessel_k(0, 2.0 * rho), 1.0, 1e-10) << rho;
  }
}

TEST(Hankel, TinyResultNeedsAbsoluteTolerance) {
  // K0(20) ~ 6e-10 sits below the rounding noise of the oscillating panels.
  const auto f = [](double k) { return k / (k * k + 4.0); };
  EXPECT_THROW(hankel_integral(f, 10.0, QuadratureSpec{}), Error);
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  const auto e = hankel_integral(f, 10.0, spec);
  EXPECT_NEAR(e.value, boost::math::cyl_bessel_k(0, 20.0), 1e-13);
  EXPECT_LE(std::abs(e.value - boost::math::cyl_bessel_k(0, 20.0)), e.abs_err + 1e-16);
}

TEST(Hankel, ProductOfBessels) {
  const QuadratureSpec spec;
  const double rho = 1.3;
  const auto e = hankel_integral([](double k) { return 1.0 / std::hypot(k, 1.0); }, rho, spec);
  const double x = 0.5 * rho;
  EXPECT_NEAR(e.value, boost::math::cyl_bessel_i(0, x) * boost::math::cyl_bessel_k(0, x), 1e-11);
}

TEST(Sine, Dirichlet) {
  const auto e = sine_integral([](double k) { return 1.0 / k; }, 3.0, QuadratureSpec{});
  EXPECT_NEAR(e.value, 0.5 * pi, 1e-12);
}

TEST(Sine, Yukawa) {
  // int k sin(kr)/(k^2 + c^2) dk = (pi/2) exp(-c r)
  const double c = 2.0;
  const double r = 0.7;
  const auto e = sine_integral([&](double k) { return k / (k * k + c * c); }, r, QuadratureSpec{});
  EXPECT_NEAR(e.value / (0.5 * pi * std::exp(-c * r)), 1.0, 1e-10);
}

TEST(SemiInfinite, Exponential) {
  const auto e = semi_infinite_integral([](double k) { return std::exp(-3.0 * k); }, 1.0, QuadratureSpec{});
  EXPECT_NEAR(e.value, 1.0 / 3.0, 1e-14);
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureSpec spec;
  spec.max_panels = 8;
  spec.rel_tol = 1e-15;
  EXPECT_THROW(hankel_integral([](double k) { return std::sqrt(k); }, 1.0, spec), Error);
}

}  // namespace
}  // namespace greens::quadrature
