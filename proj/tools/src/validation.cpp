#include "greens/app/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <nlohmann/json.hpp>

#include "greens/analytic.hpp"
#include "greens/app/commands.hpp"
#include "greens/born.hpp"
#include "greens/interactions.hpp"
#include "greens/multilayer.hpp"
#include "greens/nonlocal.hpp"
#include "greens/oracle.hpp"
#include "greens/quadrature.hpp"

namespace greens::app {

namespace {

using constants::elementary_charge;
using constants::epsilon0;
using constants::pi;
using nlohmann::json;

constexpr std::uint64_t kSeed = 0x5eed'2026'1016ULL;

std::string num(double v, const char* fmt = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string sci(double v) { return num(v, "%.3e"); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

class Report {
 public:
  CheckResult& add(std::string id, std::string title, bool passed, std::string measured,
                   std::string expected, std::string tolerance, std::string note = {}) {
    results_.push_back({std::move(id), std::move(title), passed, std::move(measured),
                        std::move(expected), std::move(tolerance), std::move(note), false});
    return results_.back();
  }

  /// Runs `body`; an exception becomes a failed check under `id`.
  void guarded(const std::string& id, const std::string& title,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(id, title, false, "error", "-", "-", e.what());
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------- limits

void check_local_field(Report& r) {
  r.guarded("local_field", "local-field factor at eps = 80", [&] {
    const double f = interactions::local_field_factor(80.0);
    r.add("local_field", "local-field factor at eps = 80", std::abs(f - 1.4907) <= 5e-4, num(f),
          "1.4907", "+-5e-4");
  });
}

double image_green(Point3 a, Point3 b) {
  return (1.0 / distance(a, b) - 1.0 / distance(a, mirror_z(b))) / (4.0 * pi);
}

void check_plate(Report& r) {
  r.guarded("plate.axis_limit", "plate on-axis self-energy at z -> 0", [&] {
    const double R = 1e-9;
    const double q = elementary_charge;
    const PlateWithHole plate{R};
    const auto U = [&](double z) {
      return interactions::self_energy(plate, {q, {0.0, 0.0, z}}).energy;
    };
    const double z1 = 1e-3 * R;
    const double z2 = 1e-4 * R;
    const double u1 = U(z1);
    const double u2 = U(z2);
    const double u0 = u2 - (u1 - u2) * z2 / (z1 - z2);
    const double stated = -q * q / (8.0 * pi * pi * epsilon0 * R);
    auto& c = r.add("plate.axis_limit", "plate on-axis self-energy at z -> 0 (extrapolated)",
                    rel(u0, stated) <= 1e-4, sci(u0) + " J", sci(stated) + " J", "rel 1e-4",
                    "measured/expected = " + num(u0 / stated, "%.5f"));
    c.known_deviation = true;

    // The coincident limit of the plate Green's function itself.
    const Point3 a{0.0, 0.0, z2};
    const double h = 1e-2 * z2;
    const double g_up = analytic::plate_hole_g(a, {0.0, 0.0, z2 + h}, R).value - 1.0 / (4.0 * pi * h);
    const double g_dn = analytic::plate_hole_g(a, {0.0, 0.0, z2 - h}, R).value - 1.0 / (4.0 * pi * h);
    const double u_green = q * q / (2.0 * epsilon0) * 0.5 * (g_up + g_dn);
    r.add("plate.axis_coincident", "on-axis self-energy equals the coincident limit of g", rel(u2, u_green) <= 1e-6,
          sci(u2) + " J", sci(u_green) + " J", "rel 1e-6");
    const double corrected = -q * q / (4.0 * pi * pi * epsilon0 * R);
    r.add("plate.axis_limit_corrected", "extrapolated U(0) vs -q^2/(4 pi^2 eps0 R)", rel(u0, corrected) <= 1e-4,
          sci(u0) + " J", sci(corrected) + " J", "rel 1e-4");
  });

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> lateral(-1.0, 1.0);
  std::uniform_real_distribution<double> height(0.05, 1.0);

  r.guarded("plate.small_hole_same_side", "R -> 0, same side: image formula", [&] {
    const double R = 1e-7;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point3 a{lateral(rng), lateral(rng), height(rng)};
      const Point3 b{lateral(rng), lateral(rng), height(rng)};
      const double g = analytic::plate_hole_g(a, b, R).value;
      worst = std::max(worst, rel(g, image_green(a, b)));
    }
    r.add("plate.small_hole_same_side", "R -> 0, same side: matches the grounded-plane image formula (100 pairs)",
          worst <= 1e-4, "max rel " + sci(worst), "0", "rel 1e-4");
  });

  r.guarded("plate.small_hole_across", "R -> 0, opposite sides: g vanishes", [&] {
    const double R = 1e-7;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point3 a{lateral(rng), lateral(rng), height(rng)};
      const Point3 b{lateral(rng), lateral(rng), -height(rng)};
      const double g = analytic::plate_hole_g(a, b, R).value;
      worst = std::max(worst, std::abs(g) * distance(a, b));
    }
    r.add("plate.small_hole_across", "R -> 0, opposite sides: |g| D- (100 pairs)", worst < 1e-6, "max " + sci(worst),
          "0", "< 1e-6");
  });

  r.guarded("plate.large_hole", "R -> infinity: free space", [&] {
    const double R = 1e7;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point3 a{lateral(rng), lateral(rng), height(rng)};
      const Point3 b{lateral(rng), lateral(rng), (i % 2 ? -1.0 : 1.0) * height(rng)};
      const double g = analytic::plate_hole_g(a, b, R).value;
      worst = std::max(worst, rel(g, 1.0 / (4.0 * pi * distance(a, b))));
    }
    r.add("plate.large_hole", "R -> infinity: matches free space, both sides (100 pairs)", worst <= 1e-4,
          "max rel " + sci(worst), "0", "rel 1e-4");
  });
}

void check_born(Report& r) {
  r.guarded("born", "Born half-space", [&] {
    const double h = 1e-9;
    const double alpha = 1e-40;
    const double eta = 1e-3 * epsilon0 / alpha;  // eta alpha / eps0 = 1e-3
    const double q = elementary_charge;
    const double inf = std::numeric_limits<double>::infinity();
    DiluteBody body;
    body.alpha = PolarizabilityTensor::isotropic(alpha);
    body.regions.push_back(BoxRegion{{-inf, -inf, -inf}, {inf, inf, 0.0}, eta});
    const Point3 a{0.0, 0.0, h};

    const GreensValue g1 = born::born_scattering_g1(a, a, body);
    const double volume_integral = -g1.value * 16.0 * pi * pi * epsilon0 / (eta * alpha);
    r.add("born.volume_integral", "volume integral of 1/|r - h z|^4 over z < 0", rel(volume_integral, pi / h) <= 1e-4,
          sci(volume_integral) + " 1/m", sci(pi / h) + " 1/m", "rel 1e-4");

    const double u_born = q * q / (2.0 * epsilon0) * g1.value;
    const double u_closed = -q * q * eta * alpha / (32.0 * pi * epsilon0 * epsilon0 * h);
    r.add("born.closed_form", "Born self-energy vs -q^2 eta alpha/(32 pi eps0^2 h)",
          rel(u_born, u_closed) <= 1e-4, sci(u_born) + " J", sci(u_closed) + " J", "rel 1e-4");

    const double u_energy = born::charge_body_energy({q, a}, body).value;
    r.add("born.energy_routes", "charge-body energy vs q^2/(2 eps0) g1", rel(u_energy, u_born) <= 1e-4,
          sci(u_energy) + " J", sci(u_born) + " J", "rel 1e-4");

    const HalfSpace hs{Permittivity::finite(1.0), Permittivity::finite(1.0 + eta * alpha / epsilon0)};
    const double u_image = interactions::self_energy(hs, {q, a}).energy;
    r.add("born.vs_image", "Born vs dielectric half-space image energy at eta alpha/eps0 = 1e-3",
          rel(u_born, u_image) <= 1e-3, sci(u_born) + " J", sci(u_image) + " J", "rel 1e-3");
  });
}

json charge_json(double q_e, double x, double y, double z) {
  return {{"q", q_e}, {"unit", "e"}, {"position", {{"x", x}, {"y", y}, {"z", z}}}};
}

void check_figures(Report& r) {
  const int threads = resolve_threads(std::nullopt);

  r.guarded("sweep.plate_onaxis_self", "on-axis plate self-energy sweep", [&] {
    const double R = 1e-9;
    json scene = {{"geometry", {{"type", "plate_with_hole"}, {"radius", R}}},
                  {"charges", json::array({charge_json(-1.0, 0.0, 0.0, R)})}};
    const auto rows = run_sweep(scene, {"/charges/0/position/z", 0.05 * R, 100.0 * R, 400}, threads);
    bool monotone = true;
    bool attractive = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      attractive = attractive && rows[i].result.energy < 0.0;
      if (i > 0) monotone = monotone && *rows[i].result.ratio_to_free > *rows[i - 1].result.ratio_to_free;
    }
    const double last = *rows.back().result.ratio_to_free;
    r.add("sweep.plate_onaxis_self", "plate self-energy: ratio to full-plate image rises monotonically to 1",
          monotone && attractive && std::abs(last - 1.0) <= 1e-3,
          "ratio(z=100R)=" + num(last, "%.7f") + (monotone ? ", monotone" : ", NOT monotone") +
              (attractive ? ", U<0" : ", U>=0 seen"),
          "-> 1, monotone, U<0", "|ratio-1| <= 1e-3");
  });

  r.guarded("sweep.plate_pair_across", "on-axis pair across the plate", [&] {
    const double za = 1e-9;
    bool ok = true;
    std::string measured;
    for (double r_over : {0.0, 1.0, 10.0}) {
      json scene = {{"geometry", {{"type", "plate_with_hole"}, {"radius", r_over * za}}},
                    {"charges", json::array({charge_json(1.0, 0.0, 0.0, za),
                                             charge_json(1.0, 0.0, 0.0, -za)})}};
      const auto rows = run_sweep(scene, {"/charges/1/position/z", -5.0 * za, 5.0 * za, 100}, threads);
      double below_min = 1e300, below_max = -1e300, above_max = -1e300, above_min = 1e300;
      for (const SweepRow& row : rows) {
        const double ratio = *row.result.ratio_to_free;
        if (row.param < 0.0) {
          below_min = std::min(below_min, ratio);
          below_max = std::max(below_max, ratio);
        } else {
          above_min = std::min(above_min, ratio);
          above_max = std::max(above_max, ratio);
        }
      }
      const bool below_ok = r_over == 0.0 ? (below_min == 0.0 && below_max == 0.0)
                                          : (below_min > 0.0 && below_max < 1.0);
      ok = ok && below_ok && above_min > 0.0 && above_max <= 1.0;
      measured += "R/zA=" + num(r_over) + ": zB<0 in [" + sci(below_min) + ", " + sci(below_max) + "]; ";
    }
    r.add("sweep.plate_pair_across", "pair across the plate: ratio == 0 for R=0, in (0,1) for R>0 when zB<0", ok,
          measured, "R=0: 0; R>0: (0,1)", "exact / open interval");
  });

  r.guarded("sweep.plate_offaxis", "off-axis slices near the hole", [&] {
    const double R = 1e-9;
    bool ok = true;
    double lo = 1e300, hi = -1e300;
    for (double zb : {0.5 * R, -0.5 * R}) {
      json scene = {{"geometry", {{"type", "plate_with_hole"}, {"radius", R}}},
                    {"charges", json::array({charge_json(1.0, R, 0.0, -0.15 * R),
                                             charge_json(1.0, 0.0, 0.0, zb)})}};
      const auto rows = run_sweep(scene, {"/charges/1/position/x", -3.0 * R, 3.0 * R, 121}, threads);
      for (const SweepRow& row : rows) {
        const double ratio = *row.result.ratio_to_free;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ok = ok && ratio >= 0.0 && ratio <= 1.0;
      }
    }
    r.add("sweep.plate_offaxis", "slices through A at (R, 0, -0.15R): 0 <= U/U0 <= 1", ok,
          "[" + num(lo) + ", " + num(hi) + "]", "[0, 1]", "bounds");
  });

  r.guarded("sweep.cavity_crossover", "conductor cavity crossover", [&] {
    const double d = 1e-9;
    json scene = {{"geometry", {{"type", "cavity"}, {"eps1", "conductor"}, {"eps2", 1.0},
                                {"eps3", "conductor"}, {"d", d}}},
                  {"charges", json::array({charge_json(1.0, 0.0, 0.0, 0.0),
                                           charge_json(1.0, d, 0.0, 0.0)})}};
    const auto rows = run_sweep(scene, {"/charges/1/position/x", 0.1 * d, 8.0 * d, 80}, threads);
    bool monotone = true;
    double worst_asym = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double ratio = *rows[i].result.ratio_to_free;
      if (i > 0) monotone = monotone && ratio < *rows[i - 1].result.ratio_to_free;
      const double x = rows[i].param / d;
      if (x >= 5.0) {
        const double asym = std::sqrt(8.0 / x) * x * std::exp(-pi * x);
        worst_asym = std::max(worst_asym, std::abs(ratio / asym - 1.0));
      }
    }
    const double first = *rows.front().result.ratio_to_free;
    const double small = 1.0 - 2.0 * std::log(2.0) * 0.1;
    r.add("sweep.cavity_crossover",
          "cavity crossover: ratio falls monotonically from ~1 - 2 ln2 rho/d to the asymptote",
          monotone && std::abs(first - small) <= 0.01 && worst_asym <= 0.1,
          "ratio(0.1d)=" + num(first) + ", max |ratio/asym-1| (rho>=5d)=" + num(worst_asym) +
              (monotone ? ", monotone" : ", NOT monotone"),
          num(small) + ", asymptote", "0.01 / 10%");
  });
}

// ------------------------------------------------------------ quadrature

void check_hankel(Report& r) {
  r.guarded("quadrature.identities", "Hankel and sine identities", [&] {
    const QuadratureSpec spec;
    double worst = 0.0;
    for (double rho : {0.5, 1.0, 3.0}) {
      const double a = 1.0;
      const double c = 1.0;
      const auto e1 = quadrature::hankel_integral([&](double k) { return std::exp(-a * k); }, rho, spec);
      worst = std::max(worst, rel(e1.value, 1.0 / std::hypot(a, rho)));
      const auto e2 = quadrature::hankel_integral([&](double k) { return k * std::exp(-a * k); }, rho, spec);
      worst = std::max(worst, rel(e2.value, a / std::pow(a * a + rho * rho, 1.5)));
      const auto e3 = quadrature::hankel_integral([&](double k) { return k / (k * k + c * c); }, rho, spec);
      worst = std::max(worst, rel(e3.value, boost::math::cyl_bessel_k(0, c * rho)));
      const auto e4 = quadrature::hankel_integral([&](double k) { return 1.0 / std::hypot(k, c); }, rho, spec);
      const double x = 0.5 * c * rho;
      worst = std::max(worst, rel(e4.value, boost::math::cyl_bessel_i(0, x) * boost::math::cyl_bessel_k(0, x)));
      const auto e5 = quadrature::sine_integral([](double k) { return 1.0 / k; }, rho, spec);
      worst = std::max(worst, rel(e5.value, 0.5 * pi));
    }
    r.add("quadrature.identities", "Bessel/sine transform identities (15 integrals)", worst <= 1e-10,
          "max rel " + sci(worst), "closed forms", "rel 1e-10");
  });
}

void check_cavity(Report& r) {
  const auto C = Permittivity::conductor();
  const auto E = [](double e) { return Permittivity::finite(e); };

  r.guarded("cavity.quadrature_vs_series", "cavity quadrature vs image series", [&] {
    struct Case {
      Permittivity e1, e2, e3;
    };
    const Case cases[] = {{C, E(1), C}, {E(4), E(1), E(8)}, {C, E(1), E(4)}, {E(4), E(2), E(4)}};
    const double d = 1.0;
    double worst_ratio = 0.0;
    double worst_scaled = 0.0;
    for (const Case& k : cases) {
      const auto coeffs = multilayer::reflection_coeffs(k.e1, k.e2, k.e3);
      for (double x : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
        const double rho = x * d;
        const GreensValue q = multilayer::cavity_g_midpoint(rho, d, k.e1, k.e2, k.e3);
        const GreensValue s = multilayer::cavity_g_series(rho, d, coeffs, k.e2.value(), QuadratureSpec{});
        const double combined = q.abs_err + s.abs_err;
        worst_ratio = std::max(worst_ratio, std::abs(q.value - s.value) / combined);
        worst_scaled = std::max(worst_scaled, combined * rho);
      }
    }
    r.add("cavity.quadrature_vs_series", "quadrature vs series, 4 cavities x 7 separations",
          worst_ratio <= 1.0 && worst_scaled <= 1e-9,
          "max |diff|/err=" + num(worst_ratio, "%.3f") + ", max err*rho=" + sci(worst_scaled),
          "|diff| <= err, err <= 1e-9/rho", "combined abs_err");
  });

  r.guarded("cavity.asymptote", "cavity asymptote", [&] {
    const double d = 1.0;
    const auto coeffs = multilayer::reflection_coeffs(C, E(1), C);
    std::string measured;
    bool ok = true;
    double previous_q = 1e300, previous_s = 1e300;
    for (double x : {5.0, 6.0, 7.0, 8.0}) {
      const double asym = multilayer::cavity_asymptotic(x * d, d, 1.0).value;
      const double q = asym / multilayer::cavity_g_midpoint(x * d, d, C, E(1), C).value;
      const double s = asym / multilayer::cavity_g_series(x * d, d, coeffs, 1.0, QuadratureSpec{}).value;
      if (x == 5.0) ok = ok && q >= 0.9 && q <= 1.1 && s >= 0.9 && s <= 1.1;
      ok = ok && std::abs(q - 1.0) < previous_q && std::abs(s - 1.0) < previous_s;
      previous_q = std::abs(q - 1.0);
      previous_s = std::abs(s - 1.0);
      measured += num(x) + "d: " + num(q, "%.5f") + "/" + num(s, "%.5f") + "; ";
    }
    r.add("cavity.asymptote", "asymptote/quadrature and asymptote/series, rho = 5..8 d", ok, measured,
          "[0.9, 1.1] at 5d, improving", "10%, monotone");
  });

  r.guarded("cavity.decay_rate", "exponential rate", [&] {
    const double d = 1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, sy_raw = 0, sxy_raw = 0;
    int n = 0;
    for (int i = 0; i <= 25; ++i) {
      const double rho = (3.0 + 0.2 * i) * d;
      const double g = multilayer::cavity_g_midpoint(rho, d, C, E(1), C).value;
      const double y = std::log(g * std::sqrt(rho));
      const double y_raw = std::log(g);
      sx += rho;
      sy += y;
      sxx += rho * rho;
      sxy += rho * y;
      sy_raw += y_raw;
      sxy_raw += rho * y_raw;
      ++n;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double slope_raw = (n * sxy_raw - sx * sy_raw) / denom;
    const double expected = -pi / d;
    r.add("cavity.decay_rate", "log-slope of g sqrt(rho) on rho/d in [3, 8]", std::abs(slope / expected - 1.0) <= 0.02,
          num(slope / pi, "%.5f") + " pi/d", "-1 pi/d", "2%",
          "raw log g fit: " + num(slope_raw / pi, "%.5f") + " pi/d");
  });
}

void check_screened(Report& r) {
  r.guarded("screened.closed_vs_quadrature", "screened bulk", [&] {
    const double omega_p[] = {0.0, 5e14, 1e15, 2.5e15, 5e15};
    const double bound_ratio[] = {0.0, 0.5, 1.0, 2.0, 4.0};
    const double beta[] = {1e6, 1.5e6, 2e6, 3e6, 5e6};
    const double r_ab = 1e-9;
    const double q = elementary_charge;
    double worst = 0.0;
    int count = 0;
    int tf_mismatch = 0;
    for (double wp : omega_p) {
      for (double ratio : bound_ratio) {
        for (double b : beta) {
          DrudeStatic p;
          p.omega_p = wp;
          p.omega_0 = 1e16;
          p.omega_p_bound = ratio * p.omega_0;
          p.beta = b;
          const double closed = nonlocal::screened_potential(r_ab, q, q, p);
          const double numeric = nonlocal::screened_potential_numeric(r_ab, q, q, p).value;
          worst = std::max(worst, rel(numeric, closed));
          ++count;
          if (ratio == 0.0 && p.screening_wavenumber() != wp / b) ++tf_mismatch;
        }
      }
    }
    r.add("screened.closed_vs_quadrature", "closed-form screened potential vs sine-transform quadrature (" +
                    std::to_string(count) + " parameter sets)",
          worst <= 1e-8, "max rel " + sci(worst), "closed form", "rel 1e-8");
    r.add("screened.thomas_fermi", "Thomas-Fermi reduction k_s = omega_p/beta when omega_p_bound = 0",
          tf_mismatch == 0, std::to_string(tf_mismatch) + " mismatches", "0", "exact");
  });
}

void check_properties(Report& r) {
  const auto E = [](double e) { return Permittivity::finite(e); };
  const auto C = Permittivity::conductor();

  r.guarded("props.reciprocity", "reciprocity", [&] {
    std::mt19937_64 rng(kSeed + 7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.05, 1.0);
    std::uniform_real_distribution<double> eps(1.0, 20.0);
    int tested = 0;
    int violations = 0;
    double worst = 0.0;
    const auto test = [&](const Geometry& geom, Point3 a, Point3 b) {
      const GreensValue ab = interactions::greens_function(geom, a, b);
      const GreensValue ba = interactions::greens_function(geom, b, a);
      const double allowed = ab.abs_err + ba.abs_err + 1e-12 * std::abs(ab.value);
      const double diff = std::abs(ab.value - ba.value);
      worst = std::max(worst, diff / allowed);
      if (diff > allowed) ++violations;
      ++tested;
    };
    for (int i = 0; i < 250; ++i) {
      const bool conductor = i % 5 == 0;
      const Geometry hs = HalfSpace{E(eps(rng)), conductor ? C : E(eps(rng))};
      const double side = conductor || i % 2 ? 1.0 : -1.0;
      test(hs, {u(rng), u(rng), pos(rng)}, {u(rng), u(rng), side * pos(rng)});
    }
    for (int i = 0; i < 250; ++i) {
      const Geometry plate = PlateWithHole{pos(rng)};
      test(plate, {u(rng), u(rng), pos(rng)}, {u(rng), u(rng), (i % 2 ? 1.0 : -1.0) * pos(rng)});
    }
    for (int i = 0; i < 300; ++i) {
      const Permittivity e1 = i % 4 == 0 ? C : E(eps(rng));
      const Permittivity e3 = i % 3 == 0 ? C : E(eps(rng));
      const Geometry cav = ThreeLayerCavity{e1, E(1.0 + 0.2 * eps(rng)), e3, 1.0};
      test(cav, {u(rng), u(rng), 0.45 * u(rng)}, {u(rng), u(rng), 0.45 * u(rng)});
    }
    for (int i = 0; i < 100; ++i) {
      DrudeStatic p;
      p.omega_p = 1e15 * pos(rng);
      p.omega_p_bound = 1e16 * pos(rng);
      p.omega_0 = 1e16;
      p.beta = 1e6;
      test(NonlocalBulk{p}, {1e-9 * u(rng), 1e-9 * u(rng), 1e-9 * u(rng)},
           {1e-9 * u(rng), 1e-9 * u(rng), 1e-9 * u(rng)});
    }
    for (int i = 0; i < 100; ++i)
      test(FreeSpace{eps(rng)}, {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
    r.add("props.reciprocity", "reciprocity g(r,r') = g(r',r), " + std::to_string(tested) + " configurations",
          violations == 0, std::to_string(violations) + " violations, max |diff|/allowed=" + num(worst, "%.3g"),
          "0", "combined abs_err + 1e-12 rel");
  });

  r.guarded("props.force_gradient", "force vs energy gradient", [&] {
    const double q = elementary_charge;
    const double nm = 1e-9;
    DrudeStatic drude;
    drude.omega_p = 2e15;
    drude.omega_p_bound = 5e15;
    drude.omega_0 = 1e16;
    drude.beta = 1e6;
    const double inf = std::numeric_limits<double>::infinity();
    DiluteBody body;
    body.alpha = PolarizabilityTensor::diagonal(1e-40, 2e-40, 1.5e-40);
    body.regions.push_back(BoxRegion{{-inf, -inf, -inf}, {inf, inf, 0.0}, 5e26});

    struct Case {
      std::string name;
      Geometry geom;
      Charge a;
      std::optional<Charge> b;
    };
    const std::vector<Case> cases = {
        {"free pair", FreeSpace{2.0}, {q, {0.1 * nm, 0.2 * nm, 0.3 * nm}}, Charge{-q, {nm, -0.5 * nm, 0.0}}},
        {"half-space self", HalfSpace{E(1.0), E(4.0)}, {q, {0.1 * nm, 0.0, 0.7 * nm}}, std::nullopt},
        {"half-space pair", HalfSpace{E(2.0), E(5.0)}, {q, {0.0, 0.0, 0.5 * nm}}, Charge{q, {0.8 * nm, 0.1 * nm, 0.9 * nm}}},
        {"half-space across", HalfSpace{E(2.0), E(5.0)}, {q, {0.0, 0.0, 0.5 * nm}}, Charge{q, {0.8 * nm, 0.1 * nm, -0.4 * nm}}},
        {"cavity pair", ThreeLayerCavity{E(4.0), E(1.0), C, nm}, {q, {0.0, 0.0, 0.2 * nm}}, Charge{q, {0.5 * nm, 0.2 * nm, -0.1 * nm}}},
        {"cavity self", ThreeLayerCavity{E(4.0), E(1.0), E(8.0), nm}, {q, {0.0, 0.0, 0.2 * nm}}, std::nullopt},
        {"plate self", PlateWithHole{nm}, {q, {0.4 * nm, 0.3 * nm, 0.5 * nm}}, std::nullopt},
        {"plate pair", PlateWithHole{nm}, {q, {0.2 * nm, 0.0, 0.5 * nm}}, Charge{-q, {-0.3 * nm, 0.1 * nm, -0.6 * nm}}},
        {"screened pair", NonlocalBulk{drude}, {q, {0.0, 0.0, 0.0}}, Charge{q, {0.6 * nm, 0.3 * nm, -0.2 * nm}}},
        {"dilute body self", body, {q, {0.0, 0.0, 0.8 * nm}}, std::nullopt},
    };
    double worst = 0.0;
    std::string worst_name;
    for (const Case& c : cases) {
      const interactions::ForceResult f = interactions::force_on_A(c.geom, c.a, c.b, false);
      const auto energy = [&](Point3 p) {
        Charge moved = c.a;
        moved.position = p;
        return c.b ? interactions::pair_energy(c.geom, moved, *c.b).energy
                   : interactions::self_energy(c.geom, moved).energy;
      };
      double reach = interactions::distance_to_surface(c.geom, c.a.position);
      if (c.b) reach = std::min(reach, distance(c.a.position, c.b->position));
      const double s = 1e-3 * reach;
      Point3 grad;
      for (int axis = 0; axis < 3; ++axis) {
        const auto at = [&](double off) {
          Point3 p = c.a.position;
          p[axis] += off;
          return energy(p);
        };
        grad[axis] = (at(-2 * s) - 8 * at(-s) + 8 * at(s) - at(2 * s)) / (12 * s);
      }
      const double err = norm(f.force + grad) / norm(f.force);
      if (err > worst) {
        worst = err;
        worst_name = c.name;
      }
    }
    r.add("props.force_gradient", "force_on_A vs 5-point gradient of the energy, 10 configurations",
          worst <= 1e-4, "max rel " + sci(worst) + " (" + worst_name + ")", "-grad U", "rel 1e-4");
  });

  r.guarded("props.action_reaction", "action and reaction", [&] {
    const double q = elementary_charge;
    DrudeStatic drude;
    drude.omega_p = 3e15;
    drude.omega_p_bound = 2e15;
    drude.omega_0 = 1e16;
    drude.beta = 1.2e6;
    const Charge a{q, {0.1e-9, -0.3e-9, 0.2e-9}};
    const Charge b{-2.0 * q, {0.9e-9, 0.4e-9, -0.5e-9}};
    double worst = 0.0;
    for (const Geometry& g : {Geometry{FreeSpace{3.0}}, Geometry{NonlocalBulk{drude}}}) {
      const Point3 fa = interactions::force_on_A(g, a, b, false).force;
      const Point3 fb = interactions::force_on_A(g, b, a, false).force;
      worst = std::max(worst, norm(fa + fb) / norm(fa));
    }
    r.add("props.action_reaction", "F_A = -F_B in free space and the screened bulk", worst <= 1e-10,
          "max rel " + sci(worst), "0", "rel 1e-10");
  });

  r.guarded("props.bilinearity", "bilinearity", [&] {
    const double q = elementary_charge;
    const double nm = 1e-9;
    const std::vector<Geometry> geoms = {HalfSpace{E(1.0), E(3.0)}, ThreeLayerCavity{E(4.0), E(1.0), C, nm},
                                         PlateWithHole{nm}};
    const Point3 pa{0.1 * nm, 0.0, 0.3 * nm};
    const Point3 pb{-0.2 * nm, 0.4 * nm, 0.1 * nm};
    double worst = 0.0;
    for (const Geometry& g : geoms) {
      const double u = interactions::pair_energy(g, {q, pa}, {q, pb}).energy;
      const double u6 = interactions::pair_energy(g, {2.0 * q, pa}, {-3.0 * q, pb}).energy;
      worst = std::max(worst, rel(u6, -6.0 * u));
      const double s = interactions::self_energy(g, {q, pa}).energy;
      const double s9 = interactions::self_energy(g, {3.0 * q, pa}).energy;
      worst = std::max(worst, rel(s9, 9.0 * s));
    }
    r.add("props.bilinearity", "pair energy bilinear and self-energy quadratic in the charges",
          worst <= 4.0 * std::numeric_limits<double>::epsilon(), "max rel " + sci(worst), "0",
          "4 ulp");
  });
}

// ---------------------------------------------------------------- oracle

oracle::GridSpec half_space_grid(int n, double h) {
  oracle::GridSpec g;
  g.n_rho = n;
  g.n_z = n;
  g.rho_max = 16.0 * h;
  g.z_min = -16.0 * h;
  g.z_max = 16.0 * h;
  return g;
}

void check_oracle(Report& r) {
  const auto E = [](double e) { return Permittivity::finite(e); };

  r.guarded("oracle.half_space", "finite-difference half-space", [&] {
    const double h = 1.0;
    const HalfSpace hs{E(1.0), E(4.0)};
    const Point3 src{0.0, 0.0, h};
    const double exact = analytic::half_space_g1(src, src, hs.eps1, hs.eps2).value;
    double value[3];
    const int sizes[3] = {64, 128, 256};
    for (int i = 0; i < 3; ++i)
      value[i] = oracle::solve_scattering_g1(hs, src, half_space_grid(sizes[i], h)).sample(src);
    const double err128 = rel(value[1], exact);
    const double err256 = rel(value[2], exact);
    r.add("oracle.half_space", "FD g1 at the source vs image result, 256x256", err256 <= 0.02,
          sci(value[2]) + " 1/m (rel " + sci(err256) + ")", sci(exact) + " 1/m", "2%");
    const double ratio = err128 / err256;
    const double self_ratio = std::abs(value[0] - value[1]) / std::abs(value[1] - value[2]);
    r.add("oracle.convergence", "error ratio on halving the grid spacing (128 -> 256)", ratio >= 3.0,
          num(ratio, "%.2f"), ">= 3", "O(h^2)",
          "successive-difference ratio 64/128/256: " + num(self_ratio, "%.2f"));
  });

  r.guarded("oracle.cavity_general", "finite-difference cavity", [&] {
    const double d = 1.0;
    oracle::GridSpec g;
    g.n_rho = 256;
    g.n_z = 256;
    g.rho_max = 4.0 * d;
    g.z_min = -3.5 * d;
    g.z_max = g.z_min + 256.0 * (4.0 * d / 240.0);

    const ThreeLayerCavity mixed{E(4.0), E(1.0), Permittivity::conductor(), d};
    const auto f1 = oracle::solve_scattering_g1(mixed, {0.0, 0.0, 0.2 * d}, g);
    const double fd1 = f1.sample(0.5 * d, 0.2 * d);
    const double q1 = multilayer::cavity_g1_general(0.2 * d, 0.2 * d, 0.5 * d, d, mixed.eps1, mixed.eps2, mixed.eps3).value;
    r.add("oracle.cavity_general", "FD g1 vs quadrature, eps = 4 | 1 | conductor, z = z0 = 0.2d, rho = 0.5d",
          rel(fd1, q1) <= 0.02, sci(fd1) + " 1/m", sci(q1) + " 1/m", "2%");

    oracle::GridSpec gs = g;
    gs.z_min = -4.0 * d;
    gs.z_max = 4.0 * d;
    gs.rho_max = 8.0 * d;
    const ThreeLayerCavity sym{E(8.0), E(1.0), E(8.0), d};
    const auto f2 = oracle::solve_scattering_g1(sym, {0.0, 0.0, 0.0}, gs);
    const double fd2 = f2.sample(d, 0.0) + 1.0 / (4.0 * pi * d);
    const double q2 = multilayer::cavity_g_midpoint(d, d, sym.eps1, sym.eps2, sym.eps3).value;
    r.add("oracle.cavity_midplane", "FD g vs quadrature, eps = 8 | 1 | 8, mid-plane, rho = d", rel(fd2, q2) <= 0.02,
          sci(fd2) + " 1/m", sci(q2) + " 1/m", "2%");
  });

  r.guarded("oracle.gauss_law", "discrete Gauss law", [&] {
    const HalfSpace hs{E(1.0), E(4.0)};
    const auto f = oracle::solve_scattering_g1(hs, {0.0, 0.0, 1.0}, half_space_grid(128, 1.0));
    const double flux = f.flux_out(100, 20, 108);
    r.add("oracle.gauss_law", "flux of eps grad g through a contour around the source", std::abs(flux - 1.0) <= 1e-3,
          num(flux, "%.7f"), "1", "1e-3");
  });

  r.guarded("oracle.eps_scaling", "permittivity scaling", [&] {
    const Point3 src{0.0, 0.0, 1.0};
    const auto grid = half_space_grid(128, 1.0);
    const double a = oracle::solve_scattering_g1(HalfSpace{E(1.0), E(4.0)}, src, grid).sample(src);
    const double b = oracle::solve_scattering_g1(HalfSpace{E(2.0), E(8.0)}, src, grid).sample(src);
    r.add("oracle.eps_scaling", "eps -> 2 eps halves g1", rel(2.0 * b, a) <= 1e-10, sci(2.0 * b / a - 1.0),
          "0", "rel 1e-10");
  });
}

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "limits") return Suite::Limits;
  if (name == "quadrature") return Suite::Quadrature;
  if (name == "oracle") return Suite::Oracle;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

std::vector<CheckResult> run_suite(Suite suite) {
  Report r;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Limits) {
    check_local_field(r);
    check_plate(r);
  }
  if (all || suite == Suite::Quadrature) {
    check_hankel(r);
    check_cavity(r);
    check_screened(r);
  }
  if (all || suite == Suite::Limits) check_born(r);
  if (all || suite == Suite::Oracle) check_oracle(r);
  if (all || suite == Suite::Quadrature) check_properties(r);
  if (all || suite == Suite::Limits) check_figures(r);
  return r.take();
}

void print_report(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const CheckResult& c : results) {
    os << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.title << " | measured " << c.measured
       << " | expected " << c.expected << " | tol " << c.tolerance;
    if (!c.note.empty()) os << " | " << c.note;
    if (!c.passed && c.known_deviation) os << " | known deviation, see README";
    os << '\n';
  }
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace greens::app
