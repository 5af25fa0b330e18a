#pragma once

// JSON scene files: a geometry, one or two charges and evaluation options.

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "greens/core.hpp"

namespace greens::app {

enum class Units { SI, Ratio };

struct Options {
  bool local_field = false;
  Units units = Units::SI;
  QuadratureSpec quadrature;
};

struct Scene {
  Geometry geometry;
  std::vector<Charge> charges;
  Options options;
};

/// Malformed scene: wrong type, missing or unknown key, bad value. `where`
/// is a JSON pointer to the offending element.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& where, const std::string& what);
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

Scene parse_scene(const nlohmann::json& doc);

/// Reads and parses a scene file. Throws SchemaError, also for unreadable
/// files and JSON syntax errors.
nlohmann::json read_scene_file(const std::string& path);

/// Sets the number at `pointer` (e.g. "/charges/1/position/z"). Throws
/// SchemaError when the pointer does not address an existing number.
void set_number(nlohmann::json& doc, const std::string& pointer, double value);

}  // namespace greens::app
