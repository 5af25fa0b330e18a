#pragma once

// Energies and forces of one or two point charges from the Green's function
// of a geometry.

#include <optional>

#include "greens/core.hpp"

namespace greens::interactions {

struct InteractionResult {
  double energy = 0.0;  // J
  /// Pair energies: U / U_free in the common host medium. Self-energies:
  /// U relative to the image energy -q^2/(16 pi eps0 eps_host s) of a
  /// grounded plane at the distance s to the nearest surface (for the plate,
  /// to the plane of the plate). Absent when no such reference exists.
  std::optional<double> ratio_to_free;
  double abs_err = 0.0;  // J
};

struct ForceResult {
  Point3 force;  // N
  double local_field_factor_applied = 1.0;
  double abs_err = 0.0;  // N, Euclidean norm bound
};

/// Full Green's function g(r, src) of the geometry, 1/m.
GreensValue greens_function(const Geometry& geom, Point3 r, Point3 src,
                            const QuadratureSpec& spec = {});

/// Scattering part g1(r, r) at coincident points.
GreensValue scattering_self(const Geometry& geom, Point3 r,
                            const QuadratureSpec& spec = {});

/// Medium at p; nullopt on an interface or on the plate.
std::optional<Permittivity> host_permittivity(const Geometry& geom, Point3 p);

/// Distance from p to the nearest material surface (infinity for bulk
/// geometries).
double distance_to_surface(const Geometry& geom, Point3 p);

/// q^2 / (2 eps0) g1(rA, rA).
InteractionResult self_energy(const Geometry& geom, const Charge& a,
                              const QuadratureSpec& spec = {});

/// qA qB / eps0 g(rA, rB).
InteractionResult pair_energy(const Geometry& geom, const Charge& a,
                              const Charge& b, const QuadratureSpec& spec = {});

/// 3 eps / (2 eps + 1).
double local_field_factor(double eps_host);

/// Force on A: the self-force when b is absent, the force due to b otherwise.
/// Closed-form gradients are used for free space, the half-space and the
/// screened bulk; everything else uses a fourth-order central difference of
/// the energy with step `step` (default 1e-5 times the distance to the
/// nearest surface or to B). Throws StepTooLarge when the Richardson error
/// estimate exceeds 1% of |F|.
ForceResult force_on_A(const Geometry& geom, const Charge& a,
                       const std::optional<Charge>& b, bool apply_local_field,
                       std::optional<double> step = std::nullopt,
                       const QuadratureSpec& spec = {});

/// Radial force on A from B on the mid-plane of a perfectly conducting
/// cavity in the rho >> d regime, -dU/drho of the asymptotic energy,
/// optionally times the local-field factor of eps2. Positive is repulsive.
double cavity_asymptotic_force(double rho, double d, double eps2, double qA,
                               double qB, bool apply_local_field);

}  // namespace greens::interactions
