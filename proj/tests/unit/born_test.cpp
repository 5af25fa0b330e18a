#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "greens/born.hpp"

namespace greens::born {
namespace {

using constants::epsilon0;
using constants::pi;

constexpr double inf = std::numeric_limits<double>::infinity();

TEST(Born, PairPotential) {
  const double alpha = 2e-40;
  const double q = 1.6e-19;
  const Point3 a{0, 0, 0};
  const Point3 b{0, 3e-10, 4e-10};
  const double r = 5e-10;
  const double expected = -q * q * alpha / (32.0 * pi * pi * epsilon0 * epsilon0 * std::pow(r, 4));
  EXPECT_NEAR(charge_molecule_potential(q, a, b, PolarizabilityTensor::isotropic(alpha)) / expected,
              1.0, 1e-14);
}

TEST(Born, SingleCellIsPairPotential) {
  // A lone cell of n molecules: energy n * U_{q-alpha}.
  const double q = 1.6e-19;
  DiluteBody body;
  body.alpha = PolarizabilityTensor::diagonal(1e-40, 3e-40, 2e-40);
  body.regions.push_back(PointCell{{1e-9, 0, -1e-9}, 1e-27, 2e27});
  const Point3 a{0, 0.5e-9, 1e-9};
  const double expected = 2.0 * charge_molecule_potential(q, a, {1e-9, 0, -1e-9}, body.alpha);
  EXPECT_NEAR(charge_body_energy({q, a}, body).value / expected, 1.0, 1e-14);
  const double g1 = born_scattering_g1(a, a, body).value;
  EXPECT_NEAR(q * q / (2.0 * epsilon0) * g1 / expected, 1.0, 1e-14);
}

TEST(Born, HalfSpaceVolumeIntegral) {
  const double h = 2e-9;
  const double eta = 1e27;
  const double alpha = 1e-40;
  DiluteBody body;
  body.alpha = PolarizabilityTensor::isotropic(alpha);
  body.regions.push_back(BoxRegion{{-inf, -inf, -inf}, {inf, inf, 0.0}, eta});
  const GreensValue g1 = born_scattering_g1({0, 0, h}, {0, 0, h}, body);
  EXPECT_NEAR(g1.value / (-eta * alpha / (16.0 * pi * epsilon0 * h)), 1.0, 1e-8);
}

TEST(Born, SlabIsDifferenceOfHalfSpaces) {
  const double h = 1e-9;
  DiluteBody thick, slab;
  thick.alpha = slab.alpha = PolarizabilityTensor::isotropic(1e-40);
  thick.regions.push_back(BoxRegion{{-inf, -inf, -inf}, {inf, inf, 0.0}, 1e27});
  slab.regions.push_back(BoxRegion{{-inf, -inf, -h}, {inf, inf, 0.0}, 1e27});
  const double g_thick = born_scattering_g1({0, 0, h}, {0, 0, h}, thick).value;
  const double g_slab = born_scattering_g1({0, 0, h}, {0, 0, h}, slab).value;
  // Thick half-space minus the part below -h, which is a half-space at 2h.
  EXPECT_NEAR(g_slab / (g_thick * (1.0 - 0.5)), 1.0, 1e-8);
}

TEST(Born, BackgroundPermittivityScaling) {
  DiluteBody body;
  body.alpha = PolarizabilityTensor::isotropic(1e-40);
  body.regions.push_back(PointCell{{0, 0, 0}, 1e-27, 1e27});
  const Point3 r{0, 0, 1e-9};
  const double g_vac = born_scattering_g1(r, r, body).value;
  body.background_eps = 3.0;
  EXPECT_NEAR(born_scattering_g1(r, r, body).value * 9.0 / g_vac, 1.0, 1e-14);
}

TEST(Born, RejectsPointInsideBody) {
  DiluteBody body;
  body.alpha = PolarizabilityTensor::isotropic(1e-40);
  body.regions.push_back(BoxRegion{{-1, -1, -1}, {1, 1, 1}, 1e27});
  EXPECT_THROW(born_scattering_g1({0, 0, 0}, {0, 0, 2}, body), Error);
}

}  // namespace
}  // namespace greens::born
