#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "greens/multilayer.hpp"

namespace greens::multilayer {
namespace {

using constants::pi;

const Permittivity kC = Permittivity::conductor();
Permittivity E(double e) { return Permittivity::finite(e); }

/// Grounded slab -d/2 < z < d/2 by eigenfunction expansion:
/// (1/(pi d)) sum_n sin(n pi (z + d/2)/d) sin(n pi (z0 + d/2)/d) K0(n pi rho/d).
double slab_modes(double z, double z0, double rho, double d) {
  double s = 0.0;
  for (int n = 1; n < 400; ++n) {
    const double k = n * pi / d;
    const double term = std::sin(k * (z + 0.5 * d)) * std::sin(k * (z0 + 0.5 * d)) *
                        boost::math::cyl_bessel_k(0, k * rho);
    s += term;
    if (k * rho > 700.0) break;
  }
  return s / (pi * d);
}

TEST(Cavity, ConductorsMatchModeSum) {
  for (double rho : {0.05, 0.3, 1.0, 4.0, 8.0}) {
    const double modes = slab_modes(0.0, 0.0, rho, 1.0);
    const GreensValue q = cavity_g_midpoint(rho, 1.0, kC, E(1), kC);
    EXPECT_NEAR(q.value, modes, 1e-12 + 1e-9 * modes) << rho;
  }
}

TEST(Cavity, OffMidplaneMatchesModeSum) {
  const double d = 2.0;
  const double z = 0.4, z0 = -0.7, rho = 0.9;
  const double modes = slab_modes(z, z0, rho, d);
  EXPECT_NEAR(cavity_g_general(z, z0, rho, d, kC, E(1), kC).value, modes, 1e-11);
  EXPECT_NEAR(cavity_g_general(z, z0, rho, d, kC, E(3), kC).value, modes / 3.0, 1e-11);
}

TEST(Cavity, SeriesMatchesQuadrature) {
  for (auto [e1, e3] : {std::pair{E(4), E(8)}, std::pair{kC, E(4)}, std::pair{E(2), E(2)}}) {
    const auto c = reflection_coeffs(e1, E(1.5), e3);
    for (double rho : {0.2, 1.0, 5.0}) {
      const GreensValue q = cavity_g_midpoint(rho, 1.0, e1, E(1.5), e3);
      const GreensValue s = cavity_g_series(rho, 1.0, c, 1.5, QuadratureSpec{});
      EXPECT_LE(std::abs(q.value - s.value), q.abs_err + s.abs_err) << rho;
    }
  }
}

TEST(Cavity, AveragedConductorSeries) {
  for (double rho : {0.5, 3.0}) {
    const GreensValue s = cavity_g_series(rho, 1.0, {1.0, 1.0}, 1.0, 50);
    EXPECT_NEAR(s.value, slab_modes(0.0, 0.0, rho, 1.0), 1e-12);
  }
  EXPECT_THROW(cavity_g_series(1.0, 1.0, {-1.0, -1.0}, 1.0, 10), Error);
}

TEST(Cavity, MirrorSymmetry) {
  const double g = cavity_g_general(0.3, -0.1, 0.4, 1.0, E(4), E(1), kC).value;
  const double m = cavity_g_general(-0.3, 0.1, 0.4, 1.0, kC, E(1), E(4)).value;
  EXPECT_NEAR(g, m, 1e-14);
}

TEST(Cavity, UniformMediumHasNoScattering) {
  EXPECT_EQ(cavity_g1_general(0.1, 0.2, 0.3, 1.0, E(2), E(2), E(2)).value, 0.0);
}

TEST(Cavity, SingleWallIsHalfSpace) {
  // eps3 = eps2: only the lower wall at -d/2. The image charge is -R1 q.
  const double d = 1.0, z = 0.1, z0 = 0.2, rho = 0.35;
  const double R1 = (4.0 - 1.0) / (4.0 + 1.0);
  const double image = -R1 / std::hypot(rho, z + z0 + d) / (4.0 * pi);
  EXPECT_NEAR(cavity_g1_general(z, z0, rho, d, E(4), E(1), E(1)).value, image, 1e-13);
}

TEST(Cavity, Asymptote) {
  const AsymptoticG a = cavity_asymptotic(6.0, 1.0, 1.0);
  EXPECT_FALSE(a.short_range);
  EXPECT_TRUE(cavity_asymptotic(1.0, 1.0, 1.0).short_range);
  // Leading mode of the eigenfunction sum.
  const double k0 = boost::math::cyl_bessel_k(0, 6.0 * pi) / pi;
  EXPECT_NEAR(a.value / k0, 1.0, 0.01);
}

TEST(Cavity, RejectsOutsideGap) {
  EXPECT_THROW(cavity_g_general(0.6, 0.0, 1.0, 1.0, kC, E(1), kC), Error);
  EXPECT_THROW(cavity_g_general(0.1, 0.1, 0.0, 1.0, kC, E(1), kC), Error);
  EXPECT_THROW(reflection_coeffs(E(1), kC, E(1)), Error);
}

}  // namespace
}  // namespace greens::multilayer
