#include <gtest/gtest.h>

#include <cmath>

#include "greens/app/scene.hpp"

namespace greens::app {
namespace {

using nlohmann::json;

json cavity_scene() {
  return json::parse(R"({
    "geometry": {"type": "cavity", "eps1": "conductor", "eps2": 2, "eps3": 4, "d": 1e-9},
    "charges": [{"q": 2, "unit": "e", "position": {"x": 0, "y": 1e-10, "z": 0}}],
    "options": {"local_field": true, "units": "ratio", "quadrature": {"rel_tol": 1e-9}}
  })");
}

std::string where_of(const json& doc) {
  try {
    parse_scene(doc);
  } catch (const SchemaError& e) {
    return e.where();
  }
  return "";
}

TEST(Scene, ParsesCavity) {
  const Scene s = parse_scene(cavity_scene());
  const auto& cav = std::get<ThreeLayerCavity>(s.geometry);
  EXPECT_TRUE(cav.eps1.is_conductor());
  EXPECT_EQ(cav.eps3.value(), 4.0);
  ASSERT_EQ(s.charges.size(), 1u);
  EXPECT_DOUBLE_EQ(s.charges[0].q, 2.0 * constants::elementary_charge);
  EXPECT_EQ(s.charges[0].position.y, 1e-10);
  EXPECT_TRUE(s.options.local_field);
  EXPECT_EQ(s.options.units, Units::Ratio);
  EXPECT_EQ(s.options.quadrature.rel_tol, 1e-9);
}

TEST(Scene, DiluteBodyWithInfiniteBox) {
  const json doc = json::parse(R"({
    "geometry": {"type": "dilute_body", "alpha": [[1e-40, 0, 0], [0, 2e-40, 0], [0, 0, 1e-40]],
                 "regions": [{"box": {"lo": ["-inf", "-inf", "-inf"], "hi": ["inf", "inf", 0]},
                              "density": 1e27},
                             {"cell": {"center": [0, 0, -5e-9], "volume": 1e-27}, "density": 1e26}]},
    "charges": [{"q": 1.6e-19, "unit": "C", "position": [0, 0, 1e-9]}]
  })");
  const Scene s = parse_scene(doc);
  const auto& body = std::get<DiluteBody>(s.geometry);
  ASSERT_EQ(body.regions.size(), 2u);
  EXPECT_TRUE(std::isinf(std::get<BoxRegion>(body.regions[0]).lo.x));
  EXPECT_EQ(body.alpha(1, 1), 2e-40);
}

TEST(Scene, RejectsUnknownKeys) {
  json doc = cavity_scene();
  doc["geometry"]["colour"] = "red";
  EXPECT_EQ(where_of(doc), "/geometry/colour");
  doc = cavity_scene();
  doc["extra"] = 1;
  EXPECT_EQ(where_of(doc), "/extra");
}

TEST(Scene, RejectsBadValues) {
  json doc = cavity_scene();
  doc["geometry"]["eps2"] = 0.5;
  EXPECT_EQ(where_of(doc), "/geometry/eps2");
  doc = cavity_scene();
  doc["charges"][0]["unit"] = "statC";
  EXPECT_EQ(where_of(doc), "/charges/0/unit");
  doc = cavity_scene();
  doc["charges"] = json::array();
  EXPECT_EQ(where_of(doc), "/charges");
  doc = cavity_scene();
  doc["geometry"].erase("d");
  EXPECT_EQ(where_of(doc), "/geometry/d");
  doc = cavity_scene();
  doc["geometry"]["type"] = "sphere";
  EXPECT_EQ(where_of(doc), "/geometry/type");
}

TEST(Scene, SetNumber) {
  json doc = cavity_scene();
  set_number(doc, "/charges/0/position/z", 2e-10);
  EXPECT_EQ(parse_scene(doc).charges[0].position.z, 2e-10);
  EXPECT_THROW(set_number(doc, "/charges/0/unit", 1.0), SchemaError);
  EXPECT_THROW(set_number(doc, "/charges/3/q", 1.0), SchemaError);
  EXPECT_THROW(set_number(doc, "no-slash", 1.0), SchemaError);
}

TEST(Scene, MissingFile) {
  EXPECT_THROW(read_scene_file("/nonexistent/scene.json"), SchemaError);
}

}  // namespace
}  // namespace greens::app
