#include <benchmark/benchmark.h>

#include <cmath>

#include "greens/analytic.hpp"
#include "greens/interactions.hpp"
#include "greens/multilayer.hpp"
#include "greens/nonlocal.hpp"
#include "greens/oracle.hpp"

namespace {

using namespace greens;

void BM_PlateHole(benchmark::State& state) {
  const Point3 a{0.3, 0.1, 0.4};
  const Point3 b{-0.2, 0.5, -0.6};
  for (auto _ : state) benchmark::DoNotOptimize(analytic::plate_hole_g(a, b, 1.0));
}
BENCHMARK(BM_PlateHole);

void BM_CavityQuadrature(benchmark::State& state) {
  const double rho = state.range(0) / 10.0;
  const auto e4 = Permittivity::finite(4.0);
  const auto e1 = Permittivity::finite(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(multilayer::cavity_g_midpoint(rho, 1.0, e4, e1, Permittivity::conductor()));
}
BENCHMARK(BM_CavityQuadrature)->Arg(1)->Arg(10)->Arg(50);

void BM_CavitySeries(benchmark::State& state) {
  const double rho = state.range(0) / 10.0;
  const auto c = multilayer::reflection_coeffs(Permittivity::finite(4.0), Permittivity::finite(1.0),
                                               Permittivity::finite(8.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(multilayer::cavity_g_series(rho, 1.0, c, 1.0, QuadratureSpec{}));
}
BENCHMARK(BM_CavitySeries)->Arg(1)->Arg(10)->Arg(50);

void BM_ScreenedQuadrature(benchmark::State& state) {
  DrudeStatic p;
  p.omega_p = 1.37e16;
  p.omega_p_bound = 8e15;
  p.omega_0 = 1e16;
  p.beta = 1.1e6;
  for (auto _ : state)
    benchmark::DoNotOptimize(nonlocal::screened_potential_numeric(2e-10, 1.0, 1.0, p));
}
BENCHMARK(BM_ScreenedQuadrature);

void BM_CavityForce(benchmark::State& state) {
  const ThreeLayerCavity cav{Permittivity::finite(4.0), Permittivity::finite(1.0),
                             Permittivity::conductor(), 1e-9};
  const Charge a{1.6e-19, {0, 0, 0.2e-9}};
  const Charge b{1.6e-19, {0.5e-9, 0.2e-9, -0.1e-9}};
  for (auto _ : state) benchmark::DoNotOptimize(interactions::force_on_A(cav, a, b, false));
}
BENCHMARK(BM_CavityForce)->Unit(benchmark::kMillisecond);

void BM_OracleHalfSpace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  oracle::GridSpec g;
  g.n_rho = g.n_z = n;
  g.rho_max = 16.0;
  g.z_min = -16.0;
  g.z_max = 16.0;
  const HalfSpace hs{Permittivity::finite(1.0), Permittivity::finite(4.0)};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve_scattering_g1(hs, {0, 0, 1}, g).sample(0.0, 1.0));
}
BENCHMARK(BM_OracleHalfSpace)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
