#pragma once

// Hadamard finite part of an integral with a power-law singularity at the
// lower endpoint:
//
//   FP int_lo^hi f(x) dx,   f(x) = sum_j c_j (x - lo)^(j - p) + O((x - lo)^(n - p))
//
// The divergent terms (power <= -1) are integrated analytically with the
// endpoint contributions discarded: u^(q+1)/(q+1) for q != -1 and log(u) for
// q == -1, u = hi - lo. The regular remainder is integrated by quadrature.
// Close to the endpoint the remainder f - (singular part) is a difference of
// huge numbers, so below `series_switch` it is evaluated from the nonnegative
// powers of the expansion instead.

#include <cmath>
#include <limits>
#include <vector>

#include "phonon/errors.hpp"
#include "phonon/numerics/quadrature.hpp"

namespace phonon::numerics {

struct EndpointExpansion {
  int leading_power = 0;             // p: the expansion starts at (x - lo)^(-p)
  std::vector<double> coefficients;  // c_j multiplies (x - lo)^(j - p)
  double series_switch = 0.0;        // 0 disables the series path

  double singular_part(double u) const {
    double s = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      const int q = int(j) - leading_power;
      if (q >= 0) break;
      if (coefficients[j] != 0.0) s += coefficients[j] * std::pow(u, q);
    }
    return s;
  }
  double regular_series(double u) const {
    double s = 0.0;
    for (std::size_t j = coefficients.size(); j-- > 0;) {
      const int q = int(j) - leading_power;
      if (q < 0) break;
      s += coefficients[j] * std::pow(u, q);
    }
    return s;
  }
};

template <class F>
QuadratureResult finite_part_integral(F&& f, double lo, double hi, const EndpointExpansion& e,
                                      double tol = 1e-10) {
  if (!(hi > lo)) throw DomainError("finite_part_integral: need lo < hi");
  const double span = hi - lo;
  double analytic = 0.0;
  for (std::size_t j = 0; j < e.coefficients.size(); ++j) {
    const int q = int(j) - e.leading_power;
    if (q >= 0) break;
    const double c = e.coefficients[j];
    if (c == 0.0) continue;
    analytic += q == -1 ? c * std::log(span) : c * std::pow(span, q + 1) / double(q + 1);
  }

  auto remainder = [&](double x) {
    const double u = x - lo;
    if (u < e.series_switch) return e.regular_series(u);
    return f(x) - e.singular_part(u);
  };

  QuadratureResult out{analytic, 0.0};
  const double split = std::min(hi, lo + e.series_switch);
  if (split > lo) {
    const auto near = adaptive_quadrature(remainder, lo, split, tol);
    out.value += near.value;
    out.error_estimate += near.error_estimate;
  }
  if (hi > split) {
    // f - (singular part) cannot be known better than the rounding of its two terms
    const auto scale = adaptive_quadrature([&](double x) { return std::abs(f(x)) + std::abs(e.singular_part(x - lo)); },
                                           split, hi, 1e-3);
    const double floor = 64 * std::numeric_limits<double>::epsilon() * scale.value;
    const auto far = adaptive_quadrature(remainder, split, hi, tol, 20, floor);
    out.value += far.value;
    out.error_estimate += far.error_estimate;
  }
  return out;
}

}  // namespace phonon::numerics
