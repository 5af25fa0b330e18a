#pragma once

// Closed-form static Green's functions: homogeneous medium, planar
// dielectric interface and a perfectly conducting plate with a circular hole.
// Every value returned here is exact up to rounding, so abs_err is zero.

#include "greens/core.hpp"

namespace greens::analytic {

/// 1 / (4 pi eps |r - src|). Throws CoincidentPoints when r == src.
GreensValue free_space_g(Point3 r, Point3 src, double eps = 1.0);

/// Green's function of the interface z = 0 between eps1 (z > 0) and
/// eps2 (z < 0). Sources below the interface are handled by reflecting both
/// points and exchanging the media. Points inside a perfect conductor see a
/// vanishing potential.
GreensValue half_space_g(Point3 r, Point3 src, Permittivity eps1,
                         Permittivity eps2);

/// Scattering (image) part of half_space_g for r and src on the same side,
/// i.e. g minus the bulk term of that medium. Finite at r == src.
GreensValue half_space_g1(Point3 r, Point3 src, Permittivity eps1,
                          Permittivity eps2);

/// Auxiliary quantities of the plate-with-hole Green's function.
/// F_plus/F_minus and D_plus/D_minus are lengths in meters.
struct HoleAux {
  double F_plus = 0.0;
  double F_minus = 0.0;
  double D_plus = 0.0;
  double D_minus = 0.0;
  int lambda_plus = 0;
  int lambda_minus = 0;
};

/// Requires R > 0 and r.z >= 0 (z = 0 only inside the hole). Source points
/// with z' >= 0 use the same-side branch, z' < 0 the opposite-side branch.
HoleAux plate_hole_aux(Point3 r, Point3 src, double R);

/// Green's function of a grounded plate z = 0 with a hole of radius R.
/// Field points with z < 0 are mapped through the plate symmetry. R == 0
/// degenerates to the full conducting plane.
GreensValue plate_hole_g(Point3 r, Point3 src, double R);

/// Scattering part g - 1/(4 pi |r - r'|) at coincident points r = r' for the
/// plate with a hole, anywhere off the conductor.
GreensValue plate_hole_self_g1(Point3 r, double R);

/// plate_hole_self_g1 on the symmetry axis:
///   -(1/4pi^2) [ atan(|z|/R)/|z| + R/(z^2 + R^2) ].
/// Even in z, always negative, -1/(2 pi^2 R) at z = 0 and -1/(8 pi |z|) as
/// R -> 0.
GreensValue plate_hole_onaxis_self_g1(double z, double R);

}  // namespace greens::analytic
