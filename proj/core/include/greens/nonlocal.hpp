#pragma once

// Static Coulomb interaction inside a homogeneous, spatially dispersive
// (hydrodynamic Drude) bulk.

#include "greens/core.hpp"

namespace greens::nonlocal {

/// eps_par(k, 0) = eps_b + omega_p^2 / (beta^2 k^2). Throws
/// NonPositiveWavenumber for k <= 0.
double eps_longitudinal_static(double k, const DrudeStatic& p);

/// 1 / eps_par(k, 0), finite down to k = 0.
double inverse_eps_longitudinal_static(double k, const DrudeStatic& p);

/// Closed form qA qB exp(-k_s r) / (4 pi eps0 eps_b r), joules.
double screened_potential(double r, double qA, double qB, const DrudeStatic& p);

/// Green's function exp(-k_s r) / (4 pi eps_b r), 1/m.
double screened_green(double r, const DrudeStatic& p);

struct EnergyEstimate {
  double value = 0.0;    // J
  double abs_err = 0.0;  // J
};

/// qA qB / (4 pi eps0) (2/pi) int_0^inf sin(k r) / (k r eps_par(k)) dk by
/// oscillatory quadrature.
EnergyEstimate screened_potential_numeric(double r, double qA, double qB,
                                          const DrudeStatic& p,
                                          const QuadratureSpec& spec = {});

}  // namespace greens::nonlocal
