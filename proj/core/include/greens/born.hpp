#pragma once

// First-order Born expansion around free space: charge-molecule potential
// and the self-energy of a charge near a dilute body of polarizable
// molecules.

#include "greens/core.hpp"

namespace greens::born {

/// -qA^2 (r . alpha . r) / (32 pi^2 eps0^2 r^6), r = rA - rB. Joules.
double charge_molecule_potential(double qA, Point3 rA, Point3 rB,
                                 const PolarizabilityTensor& alpha);

/// Born scattering part
///   g1(r, r') = -(1/eps0) int eta grad_B g0(r, rB) . alpha . grad_B g0(rB, r') d^3 rB
/// with g0 = 1/(4 pi eps_bg |.|). Boxes are integrated by nested adaptive
/// Gauss-Kronrod; infinite extents are mapped onto finite intervals, so no
/// truncation radius is involved. The volume quadrature uses
/// max(spec.rel_tol, 1e-10).
GreensValue born_scattering_g1(Point3 r, Point3 src, const DiluteBody& body,
                               const QuadratureSpec& spec = {});

struct EnergyEstimate {
  double value = 0.0;    // J
  double abs_err = 0.0;  // J
};

/// int eta U_{q-alpha}(rA, rB) d^3 rB over the body, with the background
/// permittivity applied to both field factors.
EnergyEstimate charge_body_energy(const Charge& a, const DiluteBody& body,
                                  const QuadratureSpec& spec = {});

}  // namespace greens::born
