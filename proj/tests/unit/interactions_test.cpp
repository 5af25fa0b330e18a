#include <gtest/gtest.h>

#include <cmath>

#include "greens/interactions.hpp"
#include "greens/multilayer.hpp"

namespace greens::interactions {
namespace {

using constants::elementary_charge;
using constants::epsilon0;
using constants::pi;

constexpr double q = elementary_charge;
Permittivity E(double e) { return Permittivity::finite(e); }

TEST(LocalField, Water) {
  EXPECT_NEAR(local_field_factor(80.0), 240.0 / 161.0, 1e-15);
  EXPECT_EQ(local_field_factor(1.0), 1.0);
}

TEST(PairEnergy, FreeSpaceRatioIsOne) {
  const auto r = pair_energy(FreeSpace{1.0}, {q, {0, 0, 0}}, {-q, {1, 0, 0}});
  EXPECT_NEAR(r.energy, -q * q / (4.0 * pi * epsilon0), 1e-40);
  ASSERT_TRUE(r.ratio_to_free);
  EXPECT_DOUBLE_EQ(*r.ratio_to_free, 1.0);
}

TEST(PairEnergy, ConductorScreensOtherSide) {
  const HalfSpace hs{E(1.0), Permittivity::conductor()};
  const auto r = pair_energy(hs, {q, {0, 0, 1e-9}}, {q, {0, 0, -1e-9}});
  EXPECT_EQ(r.energy, 0.0);
  EXPECT_FALSE(r.ratio_to_free);
}

TEST(PairEnergy, ConductorCavityFarApart) {
  const double d = 1e-9;
  const ThreeLayerCavity cav{Permittivity::conductor(), E(1.0), Permittivity::conductor(), d};
  const auto r = pair_energy(cav, {q, {0, 0, 0}}, {q, {5 * d, 0, 0}});
  ASSERT_TRUE(r.ratio_to_free);
  const double asym = std::sqrt(8.0 / 5.0) * 5.0 * std::exp(-5.0 * pi);
  EXPECT_NEAR(*r.ratio_to_free / asym, 1.0, 0.01);
}

TEST(SelfEnergy, GroundedPlane) {
  const double z = 2e-9;
  const auto r = self_energy(HalfSpace{E(1.0), Permittivity::conductor()}, {q, {0, 0, z}});
  EXPECT_NEAR(r.energy / (-q * q / (16.0 * pi * epsilon0 * z)), 1.0, 1e-14);
  EXPECT_NEAR(*r.ratio_to_free, 1.0, 1e-14);
}

TEST(SelfEnergy, DielectricHalfSpace) {
  const double z = 1e-9;
  const auto r = self_energy(HalfSpace{E(2.0), E(10.0)}, {q, {0, 0, z}});
  const double expected = -q * q * (8.0 / 12.0) / (16.0 * pi * epsilon0 * 2.0 * z);
  EXPECT_NEAR(r.energy / expected, 1.0, 1e-14);
}

TEST(SelfEnergy, PlateRatioTendsToOne) {
  const auto near = self_energy(PlateWithHole{1.0}, {q, {0, 0, 0.1}});
  const auto far = self_energy(PlateWithHole{1.0}, {q, {0, 0, 1e4}});
  EXPECT_LT(*near.ratio_to_free, *far.ratio_to_free);
  EXPECT_NEAR(*far.ratio_to_free, 1.0, 1e-6);
}

TEST(SelfEnergy, ScreenedBulkIsRejected) {
  DrudeStatic p;
  p.omega_p = 1e15;
  p.beta = 1e6;
  EXPECT_THROW(self_energy(NonlocalBulk{p}, {q, {0, 0, 0}}), Error);
}

TEST(Force, CoulombLaw) {
  const auto f = force_on_A(FreeSpace{2.0}, {q, {1e-9, 0, 0}}, Charge{q, {0, 0, 0}}, false);
  EXPECT_NEAR(f.force.x / (q * q / (4.0 * pi * epsilon0 * 2.0 * 1e-18)), 1.0, 1e-14);
  EXPECT_EQ(f.force.y, 0.0);
  const auto lf = force_on_A(FreeSpace{2.0}, {q, {1e-9, 0, 0}}, Charge{q, {0, 0, 0}}, true);
  EXPECT_DOUBLE_EQ(lf.local_field_factor_applied, 1.2);
  EXPECT_DOUBLE_EQ(lf.force.x, 1.2 * f.force.x);
}

TEST(Force, ImageAttraction) {
  const double z = 1e-9;
  const auto f = force_on_A(HalfSpace{E(1.0), Permittivity::conductor()}, {q, {0, 0, z}},
                            std::nullopt, false);
  EXPECT_NEAR(f.force.z / (-q * q / (16.0 * pi * epsilon0 * z * z)), 1.0, 1e-14);
}

TEST(Force, FiniteDifferenceInCavity) {
  const double d = 1e-9;
  const ThreeLayerCavity cav{E(4.0), E(1.0), Permittivity::conductor(), d};
  const Charge a{q, {0, 0, 0.1 * d}};
  const auto f = force_on_A(cav, a, std::nullopt, false);
  const double h = 1e-4 * d;
  const auto U = [&](double z) { return self_energy(cav, {q, {0, 0, z}}).energy; };
  const double fz = -(U(0.1 * d + h) - U(0.1 * d - h)) / (2.0 * h);
  EXPECT_NEAR(f.force.z / fz, 1.0, 1e-6);
  EXPECT_NEAR(f.force.x, 0.0, 1e-6 * std::abs(fz));
}

TEST(Force, RejectsOversizedStep) {
  const double d = 1e-9;
  const ThreeLayerCavity cav{E(4.0), E(1.0), E(2.0), d};
  EXPECT_THROW(force_on_A(cav, {q, {0, 0, 0.4 * d}}, std::nullopt, false, 0.05 * d), Error);
}

TEST(Force, CavityAsymptoticForce) {
  const double d = 1e-9;
  const double rho = 6.0 * d;
  const double h = 1e-6 * d;
  const auto U = [&](double r) {
    return q * q / epsilon0 * multilayer::cavity_asymptotic(r, d, 1.0).value;
  };
  const double fd = -(U(rho + h) - U(rho - h)) / (2.0 * h);
  EXPECT_NEAR(cavity_asymptotic_force(rho, d, 1.0, q, q, false) / fd, 1.0, 1e-6);
  EXPECT_NEAR(cavity_asymptotic_force(rho, d, 2.0, q, q, true) /
                  cavity_asymptotic_force(rho, d, 2.0, q, q, false),
              local_field_factor(2.0), 1e-14);
}

TEST(Surfaces, HostAndDistance) {
  const ThreeLayerCavity cav{E(4.0), E(1.0), E(2.0), 2.0};
  EXPECT_EQ(*host_permittivity(cav, {0, 0, 0.5}), E(1.0));
  EXPECT_EQ(*host_permittivity(cav, {0, 0, -3}), E(4.0));
  EXPECT_FALSE(host_permittivity(cav, {0, 0, 1.0}));
  EXPECT_DOUBLE_EQ(distance_to_surface(cav, {0, 0, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(distance_to_surface(PlateWithHole{1.0}, {0, 0, 0}), 1.0);
  EXPECT_TRUE(std::isinf(distance_to_surface(FreeSpace{}, {0, 0, 0})));
}

}  // namespace
}  // namespace greens::interactions
