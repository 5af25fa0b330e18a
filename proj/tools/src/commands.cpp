#include "greens/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace greens::app {

namespace {

std::string format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace

interactions::InteractionResult evaluate_energy(const Scene& scene) {
  const QuadratureSpec& spec = scene.options.quadrature;
  if (scene.charges.size() == 2)
    return interactions::pair_energy(scene.geometry, scene.charges[0], scene.charges[1], spec);
  return interactions::self_energy(scene.geometry, scene.charges[0], spec);
}

interactions::ForceResult evaluate_force(const Scene& scene) {
  std::optional<Charge> other;
  if (scene.charges.size() == 2) other = scene.charges[1];
  return interactions::force_on_A(scene.geometry, scene.charges[0], other,
                                  scene.options.local_field, std::nullopt,
                                  scene.options.quadrature);
}

std::vector<SweepRow> run_sweep(const nlohmann::json& scene_doc, const SweepSpec& spec,
                                int threads) {
  if (spec.points < 1) throw SchemaError("--points", "must be >= 1");
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to))
    throw SchemaError("--from/--to", "must be finite");
  // Validate the pointer and the scene once before fanning out.
  {
    nlohmann::json probe = scene_doc;
    set_number(probe, spec.pointer, spec.from);
    parse_scene(probe);
  }
  const double lo = std::min(spec.from, spec.to);
  const double hi = std::max(spec.from, spec.to);
  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    rows[static_cast<std::size_t>(i)].param =
        spec.points == 1 ? lo : lo + (hi - lo) * i / (spec.points - 1);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_at = rows.size();
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        nlohmann::json doc = scene_doc;
        set_number(doc, spec.pointer, rows[i].param);
        rows[i].result = evaluate_energy(parse_scene(doc));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        // Report the lowest failing parameter so the message is deterministic.
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const int n = std::clamp(threads, 1, spec.points);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_energy_header(std::ostream& os, bool with_param) {
  if (with_param) os << "param,";
  os << "U,ratio_to_free,abs_err\n";
}

void write_energy_row(std::ostream& os, const interactions::InteractionResult& r, Units units,
                      std::optional<double> param) {
  if (param) os << format(*param) << ',';
  const std::string ratio = r.ratio_to_free ? format(*r.ratio_to_free) : "";
  if (units == Units::SI) {
    os << format(r.energy) << ',' << ratio << ',' << format(r.abs_err) << '\n';
    return;
  }
  if (!r.ratio_to_free || r.energy == 0.0) {
    os << ratio << ',' << ratio << ",\n";
    return;
  }
  const double reference = r.energy / *r.ratio_to_free;
  os << ratio << ',' << ratio << ',' << format(std::abs(r.abs_err / reference)) << '\n';
}

void write_force(std::ostream& os, const interactions::ForceResult& f) {
  os << "Fx,Fy,Fz,local_field_factor,abs_err\n"
     << format(f.force.x) << ',' << format(f.force.y) << ',' << format(f.force.z) << ','
     << format(f.local_field_factor_applied) << ',' << format(f.abs_err) << '\n';
}

int resolve_threads(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw SchemaError("--threads", "must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("GREENS_COULOMB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 4096)
      throw SchemaError("GREENS_COULOMB_THREADS", "must be a positive integer");
    return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace greens::app
