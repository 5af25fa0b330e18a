#pragma once

// Evaluation behind the command-line subcommands.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "greens/app/scene.hpp"
#include "greens/interactions.hpp"

namespace greens::app {

/// Pair energy for two charges, self-energy for one.
interactions::InteractionResult evaluate_energy(const Scene& scene);

/// Force on the first charge (self-force or force due to the second).
interactions::ForceResult evaluate_force(const Scene& scene);

struct SweepSpec {
  std::string pointer;  // JSON pointer to a numeric scene field
  double from = 0.0;
  double to = 0.0;
  int points = 1;
};

struct SweepRow {
  double param = 0.0;
  interactions::InteractionResult result;
};

/// Evaluates the energy at `points` evenly spaced values of the addressed
/// field, on up to `threads` threads. Rows come back in ascending parameter
/// order regardless of scheduling.
std::vector<SweepRow> run_sweep(const nlohmann::json& scene_doc, const SweepSpec& spec,
                                int threads);

/// "U,ratio_to_free,abs_err" header and rows; U and abs_err in joules for
/// Units::SI, divided by the reference energy for Units::Ratio. Undefined
/// ratios are left empty.
void write_energy_header(std::ostream& os, bool with_param);
void write_energy_row(std::ostream& os, const interactions::InteractionResult& r,
                      Units units, std::optional<double> param = std::nullopt);

void write_force(std::ostream& os, const interactions::ForceResult& f);

/// --threads if given, else GREENS_COULOMB_THREADS, else the hardware count.
int resolve_threads(std::optional<int> flag);

}  // namespace greens::app
