#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "greens/analytic.hpp"
#include "greens/oracle.hpp"

namespace greens::oracle {
namespace {

Permittivity E(double e) { return Permittivity::finite(e); }

GridSpec grid(int n, double L) {
  GridSpec g;
  g.n_rho = n;
  g.n_z = n;
  g.rho_max = L;
  g.z_min = -L;
  g.z_max = L;
  return g;
}

TEST(Oracle, UniformMediumHasNoScattering) {
  const auto f = solve_scattering_g1(FreeSpace{2.0}, {0, 0, 0.25}, grid(64, 8.0));
  EXPECT_NEAR(f.sample(0.0, 0.25), 0.0, 1e-9);
}

TEST(Oracle, GroundedPlane) {
  const HalfSpace hs{E(1.0), Permittivity::conductor()};
  const auto f = solve_scattering_g1(hs, {0, 0, 1.0}, grid(128, 16.0));
  const double exact = analytic::half_space_g1({0, 0, 1}, {0, 0, 1}, hs.eps1, hs.eps2).value;
  EXPECT_NEAR(f.sample(0.0, 1.0) / exact, 1.0, 0.02);
  EXPECT_TRUE(f.in_conductor(0, 0));
}

TEST(Oracle, OffAxisDielectric) {
  const HalfSpace hs{E(1.0), E(4.0)};
  const Point3 src{0, 0, 1.0};
  const auto f = solve_scattering_g1(hs, src, grid(128, 16.0));
  const Point3 p{1.5, 0.0, 0.5};
  EXPECT_NEAR(f.sample(p) / analytic::half_space_g1(p, src, hs.eps1, hs.eps2).value, 1.0, 0.02);
}

TEST(Oracle, GaussLaw) {
  const auto f = solve_scattering_g1(HalfSpace{E(1.0), E(4.0)}, {0, 0, 1.0}, grid(128, 16.0));
  EXPECT_NEAR(f.flux_out(100, 20, 108), 1.0, 1e-3);
}

TEST(Oracle, CsvDump) {
  const auto f = solve_scattering_g1(HalfSpace{E(1.0), E(2.0)}, {0, 0, 1.0}, grid(32, 16.0));
  std::ostringstream os;
  f.write_csv(os);
  EXPECT_EQ(os.str().rfind("rho,z,g1\n", 0), 0u);
}

TEST(Oracle, RejectsBadGrids) {
  const HalfSpace hs{E(1.0), E(4.0)};
  EXPECT_THROW(solve_scattering_g1(hs, {0, 0, 0.0}, grid(64, 16.0)), Error);
  GridSpec g = grid(64, 16.0);
  g.z_min = -15.9;
  EXPECT_THROW(solve_scattering_g1(hs, {0, 0, 1.0}, g), Error);
  EXPECT_THROW(solve_scattering_g1(PlateWithHole{1.0}, {0, 0, 1.0}, grid(64, 16.0)), Error);
}

}  // namespace
}  // namespace greens::oracle
