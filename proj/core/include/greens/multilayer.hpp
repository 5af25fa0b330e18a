#pragma once

// Planar three-layer cavity: eps1 | eps2 (gap of width d) | eps3 with the
// gap centred on z = 0. Three independent routes to the Green's function in
// the gap are provided:
//
//  * Bessel-integral quadrature of the Sommerfeld-type representation,
//  * term-by-term image series,
//  * the large-distance asymptote between two perfect conductors.

#include "greens/core.hpp"
#include "greens/quadrature.hpp"

namespace greens::multilayer {

using quadrature::hankel_integral;

/// Reflection coefficients R_i = (eps_i - eps2)/(eps_i + eps2) seen from the
/// gap. A perfectly conducting wall gives exactly +1 in this convention.
struct CavityCoeffs {
  double R1 = 0.0;
  double R3 = 0.0;
};

CavityCoeffs reflection_coeffs(Permittivity eps1, Permittivity eps2,
                               Permittivity eps3);

/// g on the mid-plane z = z' = 0 at lateral separation rho > 0, by
/// quadrature.
GreensValue cavity_g_midpoint(double rho, double d, Permittivity eps1,
                              Permittivity eps2, Permittivity eps3,
                              const QuadratureSpec& spec = {});

/// Mid-plane image series truncated at n_max reflections. abs_err bounds the
/// truncation remainder: a geometric tail bound when |R1 R3| < 1; when
/// |R1 R3| = 1 the alternating tail is summed by repeated averaging and
/// abs_err is the change of the last averaging level.
GreensValue cavity_g_series(double rho, double d, CavityCoeffs coeffs,
                            double eps2, int n_max);

/// Same series with n_max chosen so that the tail bound is below
/// max(abs_tol, rel_tol |g|).
GreensValue cavity_g_series(double rho, double d, CavityCoeffs coeffs,
                            double eps2, const QuadratureSpec& spec);

/// g(z, z0, rho) for two points inside the gap (-d/2 < z, z0 < d/2).
/// Throws OutOfRegion otherwise and CoincidentPoints at rho = 0, z = z0.
GreensValue cavity_g_general(double z, double z0, double rho, double d,
                             Permittivity eps1, Permittivity eps2,
                             Permittivity eps3, const QuadratureSpec& spec = {});

/// Scattering part of cavity_g_general (the bulk term 1/(4 pi eps2 |r - r'|)
/// removed). Finite at coincident points.
GreensValue cavity_g1_general(double z, double z0, double rho, double d,
                              Permittivity eps1, Permittivity eps2,
                              Permittivity eps3, const QuadratureSpec& spec = {});

struct AsymptoticG {
  double value = 0.0;  // 1/m
  /// Set when rho < 3 d, where the asymptote is not meant to be used.
  bool short_range = false;
};

/// (1/(4 pi eps2)) sqrt(8/(rho d)) exp(-pi rho/d): mid-plane Green's function
/// between two perfectly conducting walls for rho >> d.
AsymptoticG cavity_asymptotic(double rho, double d, double eps2);

}  // namespace greens::multilayer
