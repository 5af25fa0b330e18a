#include <gtest/gtest.h>

#include "greens/core.hpp"

namespace greens {
namespace {

TEST(Permittivity, RejectsBelowVacuum) {
  EXPECT_THROW(Permittivity::finite(0.5), Error);
  EXPECT_THROW(Permittivity::finite(std::nan("")), Error);
  EXPECT_DOUBLE_EQ(Permittivity::finite(2.5).value(), 2.5);
}

TEST(Permittivity, ConductorHasNoValue) {
  const auto c = Permittivity::conductor();
  EXPECT_TRUE(c.is_conductor());
  EXPECT_THROW(c.value(), Error);
}

TEST(Contrast, ConductorLimits) {
  const auto one = Permittivity::finite(1.0);
  EXPECT_EQ(contrast(Permittivity::conductor(), one), 1.0);
  EXPECT_EQ(contrast(one, Permittivity::conductor()), -1.0);
  EXPECT_THROW(contrast(Permittivity::conductor(), Permittivity::conductor()), Error);
  EXPECT_DOUBLE_EQ(contrast(Permittivity::finite(4.0), one), 0.6);
}

TEST(Error, MessageNamesModuleAndKind) {
  const Error e(ErrorKind::NoConvergence, "quadrature", "200 panels");
  EXPECT_STREQ(e.what(), "quadrature: NoConvergence: 200 panels");
  const Error moved = e.relabel("nonlocal");
  EXPECT_EQ(moved.module(), "nonlocal");
  EXPECT_EQ(moved.detail(), "200 panels");
  EXPECT_TRUE(is_numerical(ErrorKind::SolverDiverged));
  EXPECT_FALSE(is_numerical(ErrorKind::InvalidArgument));
}

TEST(Point3, Geometry) {
  const Point3 a{1.0, 2.0, 2.0};
  EXPECT_DOUBLE_EQ(norm(a), 3.0);
  EXPECT_DOUBLE_EQ(distance(a, mirror_z(a)), 4.0);
  EXPECT_DOUBLE_EQ(distance(a, Point3{}), distance(Point3{}, a));
  Point3 b = a;
  b[2] = -1.0;
  EXPECT_EQ(b, (Point3{1.0, 2.0, -1.0}));
}

TEST(Validate, Geometries) {
  EXPECT_THROW(validate(FreeSpace{0.9}), Error);
  EXPECT_THROW(validate(ThreeLayerCavity{Permittivity::finite(2), Permittivity::conductor(),
                                         Permittivity::finite(2), 1.0}),
               Error);
  EXPECT_THROW(validate(ThreeLayerCavity{{}, {}, {}, 0.0}), Error);
  EXPECT_THROW(validate(PlateWithHole{-1.0}), Error);
  EXPECT_NO_THROW(validate(PlateWithHole{0.0}));
  DrudeStatic p;
  p.beta = 0.0;
  EXPECT_THROW(validate(NonlocalBulk{p}), Error);
  DiluteBody body;
  body.alpha.m = {1, 2, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_THROW(validate(body), Error);
  body.alpha.m = {1, 2, 0, 2, 1, 0, 0, 0, 1};  // symmetric, indefinite
  EXPECT_THROW(validate(body), Error);
  EXPECT_EQ(geometry_name(PlateWithHole{}), "plate_with_hole");
}

TEST(Drude, ThomasFermiWavenumber) {
  DrudeStatic p;
  p.omega_p = 3e15;
  p.beta = 1.5e6;
  EXPECT_EQ(p.eps_background(), 1.0);
  EXPECT_EQ(p.screening_wavenumber(), p.omega_p / p.beta);
  p.omega_p_bound = 2.0;
  p.omega_0 = 1.0;
  EXPECT_DOUBLE_EQ(p.eps_background(), 5.0);
}

TEST(Polarizability, Contract) {
  const auto t = PolarizabilityTensor::diagonal(1.0, 2.0, 3.0);
  EXPECT_DOUBLE_EQ(t.contract({1, 1, 1}, {1, 0, 2}), 7.0);
}

}  // namespace
}  // namespace greens
