#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phonon/errors.hpp"

namespace phonon::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

namespace detail {

struct Panel {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Bisect until the Kronrod error drops below the relative target or the
// panel's share of the absolute floor.
template <class F>
Panel bisect_gk15(F& f, double a, double b, double tol, double abs_tol, unsigned depth) {
  Panel p;
  p.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  if (depth == 0 || p.error <= tol * std::abs(p.value) || p.error <= abs_tol ||
      p.error <= 16 * std::numeric_limits<double>::epsilon() * p.l1)
    return p;
  const double mid = 0.5 * (a + b);
  const Panel l = bisect_gk15(f, a, mid, tol, 0.5 * abs_tol, depth - 1);
  const Panel r = bisect_gk15(f, mid, b, tol, 0.5 * abs_tol, depth - 1);
  return {l.value + r.value, l.error + r.error, l.l1 + r.l1};
}

}  // namespace detail

/// Adaptive 15-point Gauss-Kronrod. `tol` is relative to the integral;
/// `abs_tol` is an absolute floor for integrands known only to some noise level.
template <class F>
QuadratureResult adaptive_quadrature(F&& f, double lo, double hi, double tol = 1e-8,
                                     unsigned max_depth = 20, double abs_tol = 0.0) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(abs_tol >= 0.0)) throw DomainError("absolute tolerance must be non-negative");
  if (lo == hi) return {};
  auto g = [&](double x) { return static_cast<double>(f(x)); };
  const auto p = detail::bisect_gk15(g, lo, hi, tol, abs_tol, max_depth);
  if (!std::isfinite(p.value) || !std::isfinite(p.error))
    throw NumericalError("quadrature produced a non-finite value");
  const double target = std::max({tol * p.l1, 16 * std::numeric_limits<double>::epsilon() * p.l1, abs_tol});
  if (p.error > 100 * target)
    throw NumericalError("quadrature did not converge; achieved error estimate " + std::to_string(p.error));
  // the estimate never claims more than the rounding of the final sum allows
  return {p.value, std::max(p.error, 4 * std::numeric_limits<double>::epsilon() * p.l1)};
}

}  // namespace phonon::numerics
