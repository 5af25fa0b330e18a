#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "greens/app/commands.hpp"

namespace greens::app {
namespace {

using nlohmann::json;

json plate_pair() {
  return json::parse(R"({
    "geometry": {"type": "plate_with_hole", "radius": 1e-9},
    "charges": [{"q": 1, "unit": "e", "position": [0, 0, 1e-9]},
                {"q": 1, "unit": "e", "position": [0, 0, -1e-9]}]
  })");
}

std::string csv(const std::vector<SweepRow>& rows, Units units) {
  std::ostringstream os;
  write_energy_header(os, true);
  for (const auto& r : rows) write_energy_row(os, r.result, units, r.param);
  return os.str();
}

TEST(Sweep, OrderedAndThreadIndependent) {
  const SweepSpec spec{"/charges/1/position/z", 5e-9, -5e-9, 37};
  const auto serial = run_sweep(plate_pair(), spec, 1);
  const auto parallel = run_sweep(plate_pair(), spec, 8);
  ASSERT_EQ(serial.size(), 37u);
  EXPECT_EQ(serial.front().param, -5e-9);
  EXPECT_EQ(serial.back().param, 5e-9);
  for (std::size_t i = 1; i < serial.size(); ++i) EXPECT_LT(serial[i - 1].param, serial[i].param);
  EXPECT_EQ(csv(serial, Units::SI), csv(parallel, Units::SI));
}

TEST(Sweep, SinglePointEqualsDirectEvaluation) {
  json doc = plate_pair();
  const auto rows = run_sweep(doc, {"/charges/1/position/x", 3e-10, 3e-10, 1}, 4);
  ASSERT_EQ(rows.size(), 1u);
  set_number(doc, "/charges/1/position/x", 3e-10);
  EXPECT_EQ(rows[0].result.energy, evaluate_energy(parse_scene(doc)).energy);
}

TEST(Sweep, BadPointer) {
  EXPECT_THROW(run_sweep(plate_pair(), {"/geometry/type", 0, 1, 3}, 1), SchemaError);
  EXPECT_THROW(run_sweep(plate_pair(), {"/charges/0/q", 0, 1, 0}, 1), SchemaError);
}

TEST(Sweep, FirstFailureIsReported) {
  // Every row puts B on the plate itself (z = 0, rho > R).
  json doc = plate_pair();
  doc["charges"][1]["position"] = {2e-9, 0, 0};
  try {
    run_sweep(doc, {"/charges/1/position/z", 0.0, 0.0, 6}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OnPlate);
  }
}

TEST(Output, RatioUnits) {
  interactions::InteractionResult r;
  r.energy = -2.0;
  r.ratio_to_free = 0.5;
  r.abs_err = 0.01;
  std::ostringstream os;
  write_energy_row(os, r, Units::Ratio);
  EXPECT_EQ(os.str(), "5.000000000000e-01,5.000000000000e-01,2.500000000000e-03\n");
  std::ostringstream si;
  r.ratio_to_free.reset();
  write_energy_row(si, r, Units::SI, 1.0);
  EXPECT_EQ(si.str(), "1.000000000000e+00,-2.000000000000e+00,,1.000000000000e-02\n");
}

TEST(Threads, EnvironmentFallback) {
  EXPECT_EQ(resolve_threads(3), 3);
  setenv("GREENS_COULOMB_THREADS", "5", 1);
  EXPECT_EQ(resolve_threads(std::nullopt), 5);
  setenv("GREENS_COULOMB_THREADS", "many", 1);
  EXPECT_THROW(resolve_threads(std::nullopt), SchemaError);
  unsetenv("GREENS_COULOMB_THREADS");
  EXPECT_GE(resolve_threads(std::nullopt), 1);
}

}  // namespace
}  // namespace greens::app
