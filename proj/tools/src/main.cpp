#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "greens/app/commands.hpp"
#include "greens/app/scene.hpp"
#include "greens/app/validation.hpp"

namespace {

using namespace greens;
using namespace greens::app;

constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string scene;
  std::string out;
  std::string units;
  bool local_field = false;
  std::optional<double> rel_tol;
  std::optional<int> threads;
};

/// Command-line overrides are written into the scene document so that sweeps
/// see them too.
nlohmann::json load(const Flags& f) {
  nlohmann::json doc = read_scene_file(f.scene);
  if (!doc.is_object()) return doc;
  nlohmann::json& options = doc["options"];
  if (options.is_null()) options = nlohmann::json::object();
  if (!f.units.empty()) options["units"] = f.units;
  if (f.local_field) options["local_field"] = true;
  if (f.rel_tol) options["quadrature"]["rel_tol"] = *f.rel_tol;
  return doc;
}

template <class Body>
int with_output(const std::string& path, Body body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return 0;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", path.c_str());
    return kExitInput;
  }
  body(os);
  return os ? 0 : kExitInput;
}

void add_common(CLI::App* cmd, Flags& f, bool scene_required = true) {
  auto* scene = cmd->add_option("--scene", f.scene, "scene JSON file");
  if (scene_required) scene->required();
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--units", f.units, "si or ratio")->check(CLI::IsMember({"si", "ratio"}));
  cmd->add_flag("--local-field", f.local_field, "apply the local-field factor to forces");
  cmd->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
}

int run(int argc, char** argv) {
  CLI::App app{"Static Coulomb interactions from electrostatic Green's functions"};
  app.require_subcommand(1);
  Flags flags;

  auto* pair = app.add_subcommand("pair-energy", "interaction energy of two charges");
  add_common(pair, flags);
  auto* self = app.add_subcommand("self-energy", "self-energy of one charge");
  add_common(self, flags);
  auto* force = app.add_subcommand("force", "force on the first charge");
  add_common(force, flags);

  auto* sweep = app.add_subcommand("sweep", "energy along a scene parameter, as CSV");
  add_common(sweep, flags);
  SweepSpec spec;
  sweep->add_option("--param", spec.pointer, "JSON pointer, e.g. /charges/1/position/z")->required();
  sweep->add_option("--from", spec.from)->required();
  sweep->add_option("--to", spec.to)->required();
  sweep->add_option("--points", spec.points)->required()->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "run an acceptance suite");
  std::string suite_name = "all";
  validate->add_option("suite", suite_name, "limits, quadrature, oracle or all")
      ->check(CLI::IsMember({"limits", "quadrature", "oracle", "all"}));
  validate->add_option("--out", flags.out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (validate->parsed()) {
      const auto results = run_suite(*parse_suite(suite_name));
      const int io = with_output(flags.out, [&](std::ostream& os) { print_report(os, results); });
      if (io != 0) return io;
      return all_passed(results) ? 0 : kExitFailed;
    }

    const nlohmann::json doc = load(flags);

    if (sweep->parsed()) {
      const Scene scene = parse_scene(doc);
      const auto rows = run_sweep(doc, spec, resolve_threads(flags.threads));
      return with_output(flags.out, [&](std::ostream& os) {
        write_energy_header(os, true);
        for (const SweepRow& row : rows) write_energy_row(os, row.result, scene.options.units, row.param);
      });
    }

    const Scene scene = parse_scene(doc);
    if (force->parsed()) {
      const auto f = evaluate_force(scene);
      return with_output(flags.out, [&](std::ostream& os) { write_force(os, f); });
    }
    if (pair->parsed() && scene.charges.size() != 2)
      throw SchemaError("/charges", "pair-energy needs exactly 2 charges");
    if (self->parsed() && scene.charges.size() != 1)
      throw SchemaError("/charges", "self-energy needs exactly 1 charge");
    const auto r = evaluate_energy(scene);
    return with_output(flags.out, [&](std::ostream& os) {
      write_energy_header(os, false);
      write_energy_row(os, r, scene.options.units);
    });
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const bool numerical = is_numerical(e.kind()) || e.kind() == ErrorKind::StepTooLarge;
    return numerical ? kExitNumerical : kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
