#include "greens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

namespace greens::quadrature {

namespace {

constexpr const char* kModule = "multilayer";
constexpr unsigned kMaxDepth = 12;

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct PanelResult {
  double value;
  double abs_err;
};

PanelResult integrate_panel(const Integrand& g, double a, double b, double tol) {
  double err = 0.0;
  double l1 = 0.0;
  const double v = Rule::integrate(g, a, b, kMaxDepth, tol, &err, &l1);
  return {v, err};
}

double panel_tolerance(const QuadratureSpec& spec) {
  return std::clamp(spec.rel_tol * 1e-2, 1e-15, 1e-6);
}

double target(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

[[noreturn]] void no_convergence(const char* what, double rho, int panels,
                                 double last) {
  std::ostringstream os;
  os << what << " did not converge (rho=" << rho << ", panels=" << panels
     << ", last estimate=" << last << ")";
  throw Error(ErrorKind::NoConvergence, kModule, os.str());
}

double kernel_zero(Kernel kernel, int n) {
  return kernel == Kernel::BesselJ0 ? bessel_j0_zero(n)
                                    : static_cast<double>(n) * constants::pi;
}

double kernel_value(Kernel kernel, double x) {
  return kernel == Kernel::BesselJ0 ? boost::math::cyl_bessel_j(0, x) : std::sin(x);
}

}  // namespace

double bessel_j0_zero(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, kModule, "zero index must be >= 1");
  return boost::math::cyl_bessel_j_zero(0.0, n);
}

WynnEpsilon::WynnEpsilon(int order) : window_(2 * std::max(order, 1) + 1) {}

double WynnEpsilon::push(double partial_sum) {
  sums_.push_back(partial_sum);
  if (static_cast<int>(sums_.size()) > window_) sums_.erase(sums_.begin());
  return wynn_limit(sums_);
}

double wynn_limit(std::span<const double> partial_sums) {
  const std::size_t m = partial_sums.size();
  if (m < 3) return m == 0 ? 0.0 : partial_sums.back();
  std::vector<double> previous(m + 1, 0.0);  // epsilon_{-1}
  std::vector<double> current(partial_sums.begin(), partial_sums.end());
  double best = current.back();
  for (std::size_t column = 1; current.size() > 1; ++column) {
    std::vector<double> next(current.size() - 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const double diff = current[i + 1] - current[i];
      const double scale =
          std::max(std::abs(current[i + 1]), std::abs(current[i]));
      if (std::abs(diff) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
        // Column has converged to rounding; the even column above is final.
        return column % 2 == 1 ? current[i + 1] : best;
      }
      next[i] = previous[i + 1] + 1.0 / diff;
    }
    previous = std::move(current);
    current = std::move(next);
    if (column % 2 == 0) best = current.back();
  }
  return best;
}

Estimate oscillatory_integral(const Integrand& f, Kernel kernel, double rho,
                              const QuadratureSpec& spec, double scale) {
  spec.validate();
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw Error(ErrorKind::InvalidArgument, kModule,
                "oscillatory integral needs rho > 0");

  const Integrand g = [&](double k) { return f(k) * kernel_value(kernel, k * rho); };
  const double ptol = panel_tolerance(spec);

  WynnEpsilon wynn(spec.accel_order);
  double sum = 0.0;
  double quad_err = 0.0;
  double previous_panel = std::numeric_limits<double>::infinity();
  std::vector<double> estimates;
  double left = 0.0;

  for (int n = 1; n <= spec.max_panels; ++n) {
    const double right = kernel_zero(kernel, n) / rho;
    PanelResult panel{0.0, 0.0};
    if (n == 1 && scale > 0.0 && right * scale > 2.0) {
      // f decays well inside the first panel: split geometrically so the
      // adaptive rule sees the decay scale.
      double a = 0.0;
      double b = 1.0 / scale;
      while (a < right) {
        const double hi = std::min(b, right);
        const PanelResult piece = integrate_panel(g, a, hi, ptol);
        panel.value += piece.value;
        panel.abs_err += piece.abs_err;
        a = hi;
        b *= 2.0;
      }
    } else {
      // Kernel values far out carry a phase error of order eps * k rho.
      const double noise = 32.0 * std::numeric_limits<double>::epsilon() * right * rho;
      panel = integrate_panel(g, left, right, std::max(ptol, noise));
    }
    left = right;
    sum += panel.value;
    quad_err += panel.abs_err;
    const double estimate = wynn.push(sum);
    estimates.push_back(estimate);

    const double tol = target(spec, estimate);
    if (n >= 3 && std::abs(panel.value) <= 0.1 * tol &&
        std::abs(previous_panel) <= 0.1 * tol) {
      return {sum, std::abs(panel.value) + quad_err, n, false};
    }
    previous_panel = panel.value;

    if (wynn.size() >= 7 && estimates.size() >= 3) {
      const std::size_t k = estimates.size();
      const double d1 = std::abs(estimates[k - 1] - estimates[k - 2]);
      const double d2 = std::abs(estimates[k - 2] - estimates[k - 3]);
      if (d1 <= tol && d2 <= tol) {
        return {estimate, std::max(d1, d2) + quad_err, n, true};
      }
    }
  }
  no_convergence("oscillatory integral", rho, spec.max_panels,
                 estimates.empty() ? 0.0 : estimates.back());
}

Estimate hankel_integral(const Integrand& f, double rho,
                         const QuadratureSpec& spec, double scale) {
  if (rho == 0.0) return semi_infinite_integral(f, scale, spec);
  return oscillatory_integral(f, Kernel::BesselJ0, rho, spec, scale);
}

Estimate sine_integral(const Integrand& f, double r, const QuadratureSpec& spec,
                       double scale) {
  return oscillatory_integral(f, Kernel::Sine, r, spec, scale);
}

Estimate semi_infinite_integral(const Integrand& f, double scale,
                                const QuadratureSpec& spec) {
  spec.validate();
  const double ptol = panel_tolerance(spec);
  const double first = scale > 0.0 ? 1.0 / scale : 1.0;
  double a = 0.0;
  double b = first;
  double sum = 0.0;
  double quad_err = 0.0;
  double previous_panel = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= spec.max_panels; ++n) {
    const PanelResult panel = integrate_panel(f, a, b, ptol);
    sum += panel.value;
    quad_err += panel.abs_err;
    const double tol = target(spec, sum);
    if (n >= 3 && std::abs(panel.value) <= 0.1 * tol &&
        std::abs(previous_panel) <= 0.1 * tol) {
      return {sum, std::abs(panel.value) + quad_err, n, false};
    }
    previous_panel = panel.value;
    a = b;
    b *= 2.0;
    if (!std::isfinite(b)) break;
  }
  no_convergence("semi-infinite integral", 0.0, spec.max_panels, sum);
}

}  // namespace greens::quadrature
