#pragma once

// Semi-infinite oscillatory quadrature: integrals of the form
//
//   I = int_0^inf f(k) w(k rho) dk,   w = J0 or sin,
//
// are split into panels at the zeros of w, each panel is integrated with
// adaptive Gauss-Kronrod, and the sequence of partial sums is accelerated
// with Wynn's epsilon algorithm. Exponentially decaying integrands usually
// terminate directly once the panel contributions fall below tolerance.

#include <functional>
#include <span>
#include <vector>

#include "greens/core.hpp"

namespace greens::quadrature {

using Integrand = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double abs_err = 0.0;
  int panels = 0;
  bool extrapolated = false;
};

enum class Kernel { BesselJ0, Sine };

/// n-th positive zero of J0 (n >= 1).
double bessel_j0_zero(int n);

/// Wynn epsilon extrapolation of a partial-sum sequence. Keeps only the
/// last 2 * order + 1 sums.
class WynnEpsilon {
 public:
  explicit WynnEpsilon(int order);

  /// Adds the next partial sum and returns the current limit estimate.
  double push(double partial_sum);
  int size() const noexcept { return static_cast<int>(sums_.size()); }

 private:
  int window_;
  std::vector<double> sums_;
};

/// Extrapolated limit of a finished sequence of partial sums.
double wynn_limit(std::span<const double> partial_sums);

/// int_0^inf f(k) w(k rho) dk for rho > 0. `scale` is a characteristic
/// length of f (it varies on k ~ 1/scale); it only guides the first panel
/// subdivision and may be 0. Throws NoConvergence when max_panels is
/// exhausted.
Estimate oscillatory_integral(const Integrand& f, Kernel kernel, double rho,
                              const QuadratureSpec& spec, double scale = 0.0);

/// int_0^inf f(k) J0(k rho) dk. rho == 0 reduces to semi_infinite_integral
/// and then requires a decaying f.
Estimate hankel_integral(const Integrand& f, double rho,
                         const QuadratureSpec& spec, double scale = 0.0);

/// int_0^inf f(k) sin(k r) dk for r > 0.
Estimate sine_integral(const Integrand& f, double r, const QuadratureSpec& spec,
                       double scale = 0.0);

/// int_0^inf f(k) dk for a decaying, non-oscillatory f. The first panel is
/// [0, 1/scale] (scale is a length, as above) and panels double from there.
Estimate semi_infinite_integral(const Integrand& f, double scale,
                                const QuadratureSpec& spec);

}  // namespace greens::quadrature
