#include "greens/app/scene.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>

namespace greens::app {

namespace {

using nlohmann::json;

SchemaError error_at(const std::string& where, const std::string& what) {
  return SchemaError(where.empty() ? "/" : where, what);
}

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw error_at(where, "expected an object");
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!names.count(item.key())) throw error_at(where + "/" + item.key(), "unknown key");
}

const json& required(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw error_at(where + "/" + key, "missing required key");
  return *it;
}

/// Numbers, plus the strings "inf" and "-inf" where `allow_infinite`.
double number(const json& v, const std::string& where, bool allow_infinite = false) {
  if (v.is_number()) return v.get<double>();
  if (allow_infinite && v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw error_at(where, allow_infinite ? "expected a number or \"inf\"/\"-inf\""
                                       : "expected a number");
}

double optional_number(const json& obj, const std::string& where, const char* key,
                       double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, where + "/" + key);
}

Permittivity permittivity(const json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "conductor") return Permittivity::conductor();
    throw error_at(where, "expected a number >= 1 or \"conductor\"");
  }
  const double e = number(v, where);
  if (!(e >= 1.0) || !std::isfinite(e)) throw error_at(where, "permittivity must be >= 1");
  return Permittivity::finite(e);
}

Point3 point(const json& v, const std::string& where, bool allow_infinite = false) {
  if (v.is_array()) {
    if (v.size() != 3) throw error_at(where, "expected [x, y, z]");
    return {number(v[0], where + "/0", allow_infinite), number(v[1], where + "/1", allow_infinite),
            number(v[2], where + "/2", allow_infinite)};
  }
  only_keys(v, where, {"x", "y", "z"});
  return {number(required(v, where, "x"), where + "/x", allow_infinite),
          number(required(v, where, "y"), where + "/y", allow_infinite),
          number(required(v, where, "z"), where + "/z", allow_infinite)};
}

PolarizabilityTensor tensor(const json& v, const std::string& where) {
  if (v.is_number()) return PolarizabilityTensor::isotropic(v.get<double>());
  if (!v.is_array()) throw error_at(where, "expected a number, 9 numbers or a 3x3 array");
  PolarizabilityTensor t;
  if (v.size() == 9) {
    for (int i = 0; i < 9; ++i)
      t.m[static_cast<std::size_t>(i)] = number(v[static_cast<std::size_t>(i)],
                                                where + "/" + std::to_string(i));
    return t;
  }
  if (v.size() != 3) throw error_at(where, "expected a number, 9 numbers or a 3x3 array");
  for (int i = 0; i < 3; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    const std::string rw = where + "/" + std::to_string(i);
    if (!row.is_array() || row.size() != 3) throw error_at(rw, "expected a row of 3 numbers");
    for (int j = 0; j < 3; ++j)
      t.m[static_cast<std::size_t>(3 * i + j)] =
          number(row[static_cast<std::size_t>(j)], rw + "/" + std::to_string(j));
  }
  return t;
}

BodyRegion region(const json& v, const std::string& where) {
  only_keys(v, where, {"box", "cell", "density"});
  const double density = number(required(v, where, "density"), where + "/density");
  const bool has_box = v.contains("box");
  const bool has_cell = v.contains("cell");
  if (has_box == has_cell) throw error_at(where, "expected exactly one of \"box\" or \"cell\"");
  if (has_box) {
    const json& b = v["box"];
    const std::string bw = where + "/box";
    only_keys(b, bw, {"lo", "hi"});
    return BoxRegion{point(required(b, bw, "lo"), bw + "/lo", true),
                     point(required(b, bw, "hi"), bw + "/hi", true), density};
  }
  const json& c = v["cell"];
  const std::string cw = where + "/cell";
  only_keys(c, cw, {"center", "volume"});
  return PointCell{point(required(c, cw, "center"), cw + "/center"),
                   number(required(c, cw, "volume"), cw + "/volume"), density};
}

Geometry geometry(const json& g, const std::string& where) {
  if (!g.is_object()) throw error_at(where, "expected an object");
  const json& type_node = required(g, where, "type");
  if (!type_node.is_string()) throw error_at(where + "/type", "expected a string");
  const std::string type = type_node.get<std::string>();

  if (type == "free_space") {
    only_keys(g, where, {"type", "eps"});
    const double eps = optional_number(g, where, "eps", 1.0);
    if (!(eps >= 1.0)) throw error_at(where + "/eps", "permittivity must be >= 1");
    return FreeSpace{eps};
  }
  if (type == "half_space") {
    only_keys(g, where, {"type", "eps1", "eps2"});
    return HalfSpace{permittivity(required(g, where, "eps1"), where + "/eps1"),
                     permittivity(required(g, where, "eps2"), where + "/eps2")};
  }
  if (type == "cavity") {
    only_keys(g, where, {"type", "eps1", "eps2", "eps3", "d"});
    return ThreeLayerCavity{permittivity(required(g, where, "eps1"), where + "/eps1"),
                            permittivity(required(g, where, "eps2"), where + "/eps2"),
                            permittivity(required(g, where, "eps3"), where + "/eps3"),
                            number(required(g, where, "d"), where + "/d")};
  }
  if (type == "plate_with_hole") {
    only_keys(g, where, {"type", "radius"});
    return PlateWithHole{number(required(g, where, "radius"), where + "/radius")};
  }
  if (type == "nonlocal_bulk") {
    only_keys(g, where, {"type", "omega_p", "omega_p_bound", "omega_0", "beta",
                         "damping_bound", "damping_free"});
    DrudeStatic p;
    p.omega_p = number(required(g, where, "omega_p"), where + "/omega_p");
    p.omega_p_bound = optional_number(g, where, "omega_p_bound", 0.0);
    p.omega_0 = optional_number(g, where, "omega_0", 1.0);
    p.beta = number(required(g, where, "beta"), where + "/beta");
    p.damping_bound = optional_number(g, where, "damping_bound", 0.0);
    p.damping_free = optional_number(g, where, "damping_free", 0.0);
    return NonlocalBulk{p};
  }
  if (type == "dilute_body") {
    only_keys(g, where, {"type", "alpha", "background_eps", "regions"});
    DiluteBody body;
    body.alpha = tensor(required(g, where, "alpha"), where + "/alpha");
    body.background_eps = optional_number(g, where, "background_eps", 1.0);
    const json& regions = required(g, where, "regions");
    if (!regions.is_array()) throw error_at(where + "/regions", "expected an array");
    for (std::size_t i = 0; i < regions.size(); ++i)
      body.regions.push_back(region(regions[i], where + "/regions/" + std::to_string(i)));
    return body;
  }
  throw error_at(where + "/type",
                 "unknown geometry \"" + type +
                     "\" (free_space, half_space, cavity, plate_with_hole, nonlocal_bulk, "
                     "dilute_body)");
}

Charge charge(const json& c, const std::string& where) {
  only_keys(c, where, {"q", "unit", "position"});
  double q = number(required(c, where, "q"), where + "/q");
  if (const auto it = c.find("unit"); it != c.end()) {
    if (!it->is_string()) throw error_at(where + "/unit", "expected \"C\" or \"e\"");
    const auto unit = it->get<std::string>();
    if (unit == "e") {
      q *= constants::elementary_charge;
    } else if (unit != "C") {
      throw error_at(where + "/unit", "expected \"C\" or \"e\"");
    }
  }
  return {q, point(required(c, where, "position"), where + "/position")};
}

Options options(const json& o, const std::string& where) {
  only_keys(o, where, {"local_field", "units", "quadrature"});
  Options out;
  if (const auto it = o.find("local_field"); it != o.end()) {
    if (!it->is_boolean()) throw error_at(where + "/local_field", "expected true or false");
    out.local_field = it->get<bool>();
  }
  if (const auto it = o.find("units"); it != o.end()) {
    const std::string u = it->is_string() ? it->get<std::string>() : "";
    if (u == "si") {
      out.units = Units::SI;
    } else if (u == "ratio") {
      out.units = Units::Ratio;
    } else {
      throw error_at(where + "/units", "expected \"si\" or \"ratio\"");
    }
  }
  if (const auto it = o.find("quadrature"); it != o.end()) {
    const std::string qw = where + "/quadrature";
    only_keys(*it, qw, {"rel_tol", "abs_tol", "max_panels", "accel_order"});
    QuadratureSpec& q = out.quadrature;
    q.rel_tol = optional_number(*it, qw, "rel_tol", q.rel_tol);
    q.abs_tol = optional_number(*it, qw, "abs_tol", q.abs_tol);
    for (const char* key : {"max_panels", "accel_order"}) {
      if (!it->contains(key)) continue;
      const json& v = (*it)[key];
      if (!v.is_number_integer()) throw error_at(qw + "/" + key, "expected an integer");
      (std::string(key) == "max_panels" ? q.max_panels : q.accel_order) = v.get<int>();
    }
  }
  return out;
}

}  // namespace

SchemaError::SchemaError(const std::string& where, const std::string& what)
    : std::runtime_error("scene " + where + ": " + what), where_(where) {}

Scene parse_scene(const json& doc) {
  only_keys(doc, "", {"geometry", "charges", "options"});
  Scene scene;
  scene.geometry = geometry(required(doc, "", "geometry"), "/geometry");
  const json& charges = required(doc, "", "charges");
  if (!charges.is_array() || charges.empty() || charges.size() > 2)
    throw error_at("/charges", "expected an array of 1 or 2 charges");
  for (std::size_t i = 0; i < charges.size(); ++i)
    scene.charges.push_back(charge(charges[i], "/charges/" + std::to_string(i)));
  if (const auto it = doc.find("options"); it != doc.end())
    scene.options = options(*it, "/options");

  try {
    validate(scene.geometry);
    scene.options.quadrature.validate();
  } catch (const Error& e) {
    throw error_at("/geometry", e.detail());
  }
  return scene;
}

nlohmann::json read_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open scene file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("JSON syntax error: ") + e.what());
  }
}

void set_number(nlohmann::json& doc, const std::string& pointer, double value) {
  json::json_pointer ptr;
  try {
    ptr = json::json_pointer(pointer);
  } catch (const json::exception&) {
    throw SchemaError(pointer, "not a valid JSON pointer");
  }
  // Points written as [x, y, z] accept .../x, .../y, .../z as well.
  if (!ptr.empty()) {
    const std::string last = ptr.back();
    const json::json_pointer parent = ptr.parent_pointer();
    if ((last == "x" || last == "y" || last == "z") && doc.contains(parent) &&
        doc.at(parent).is_array() && doc.at(parent).size() == 3)
      ptr = parent / static_cast<std::size_t>(last[0] - 'x');
  }
  if (!doc.contains(ptr) || !doc.at(ptr).is_number())
    throw SchemaError(pointer, "does not address a numeric scene field");
  doc.at(ptr) = value;
}

}  // namespace greens::app
