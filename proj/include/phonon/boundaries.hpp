#pragma once

// Boundary-induced shifts <rho^2>_R for plates, a periodic box, a wedge and a
// cosmic string, plus the point-split oracle for the conical geometries.
//
// The printed two-plate and wedge closed forms are evaluated verbatim. Their
// independent oracles (image sum, point splitting) are exposed alongside so
// that any normalization mismatch is measured rather than hidden.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "phonon/core.hpp"
#include "phonon/freefield.hpp"
#include "phonon/numerics/finite_difference.hpp"
#include "phonon/numerics/lattice_sum.hpp"
#include "phonon/numerics/richardson.hpp"
#include "phonon/numerics/summation.hpp"

namespace phonon {

namespace detail {
inline void require_length(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
}
}  // namespace detail

/// Attractive force per unit area hbar cS pi^2 / (480 a^4), returned as a magnitude.
inline double casimir_force_per_area(const FluidSpec& spec, double a) {
  detail::require_length(a, "a");
  return spec.hbar * spec.cS * pi * pi / (480.0 * quartic(a));
}

inline GeometryResult single_plate(const FluidSpec& spec, double z) {
  detail::require_length(z, "z");
  return make_geometry_result(spec, -1.0 / (32.0 * pi * pi), quartic(z), Geometry::single_plate, {{"z", z}});
}

// ---------------------------------------------------------------------------
// Two parallel plates

namespace detail {
inline void require_gap(double a, double z) {
  require_length(a, "a");
  if (!std::isfinite(z) || !(z > 0.0) || !(z < a)) throw DomainError("z must lie strictly between the plates (0 < z < a)");
}
}  // namespace detail

/// The printed closed form. `result.inputs["image_normalized"]` carries the
/// same quantity multiplied by pi^2, which is what the image sum reproduces.
inline GeometryResult parallel_plates_closed(const FluidSpec& spec, double a, double z) {
  detail::require_gap(a, z);
  // fold onto the nearer plate so that z -> a - z is an exact symmetry
  const double s = std::sin(pi * std::min(z, a - z) / a);
  const double s2 = s * s;
  const double coeff = -(1.0 / 96.0) * (1.0 / 15.0 + (3.0 - 2.0 * s2) / (s2 * s2));
  auto r = make_geometry_result(spec, coeff, quartic(a), Geometry::parallel_plates, {{"a", a}, {"z", z}});
  r.inputs["image_normalized_coefficient"] = coeff * pi * pi;
  return r;
}

/// Closed form rescaled by pi^2 to the image-sum normalization.
inline GeometryResult parallel_plates_image_normalized(const FluidSpec& spec, double a, double z) {
  auto r = parallel_plates_closed(spec, a, z);
  return make_geometry_result(spec, r.coefficient * pi * pi, quartic(a), Geometry::parallel_plates,
                              {{"a", a}, {"z", z}});
}

/// -(hbar rho0 / 2 pi^2 cS) [sum_{n != 0} (2an)^-4 + sum_n (2z - 2an)^-4], |n| <= n_max,
/// summed from the smallest terms up. error_bound is the integral bound on the
/// dropped terms; a warning is attached when it exceeds tol * |value|.
inline GeometryResult parallel_plates_image_sum(const FluidSpec& spec, double a, double z, int n_max,
                                                double tol = 1e-8) {
  detail::require_gap(a, z);
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  // work in units of a: x = z / a
  const double x = z / a;
  std::vector<double> terms;
  terms.reserve(4 * std::size_t(n_max) + 1);
  for (int n = n_max; n >= 1; --n) {
    const double t = 1.0 / quartic(2.0 * n);
    terms.push_back(t);
    terms.push_back(t);
    terms.push_back(1.0 / quartic(2.0 * x + 2.0 * n));
    terms.push_back(1.0 / quartic(2.0 * x - 2.0 * n));
  }
  terms.push_back(1.0 / quartic(2.0 * x));
  std::sort(terms.begin(), terms.end());
  const double sum = numerics::compensated_sum(terms);
  const double N = n_max;
  // int_N^inf (2u)^-4 du = 1 / (48 N^3), shifted by x for the image terms
  const double tail = 2.0 / (48.0 * N * N * N) + 1.0 / (48.0 * std::pow(N - x, 3)) + 1.0 / (48.0 * std::pow(N + x, 3));
  const double c = -1.0 / (2.0 * pi * pi);
  auto r = make_geometry_result(spec, c * sum, quartic(a), Geometry::parallel_plates_image_sum,
                                {{"a", a}, {"z", z}, {"n_max", double(n_max)}});
  r.error_bound = std::abs(c * tail * r.scale);
  if (r.error_bound > tol * std::abs(r.value))
    r.warnings.push_back("n_max too small: tail bound " + std::to_string(r.error_bound) + " exceeds tolerance");
  return r;
}

// ---------------------------------------------------------------------------
// Periodic box

/// -(hbar rho0 / 2 pi^2 cS) Sum'(l^2 L1^2 + m^2 L2^2 + n^2 L3^2)^-2. The
/// coefficient is expressed against L1.
inline GeometryResult torus(const FluidSpec& spec, double L1, double L2, double L3, double tol = 1e-6,
                            int max_shells = 400) {
  detail::require_length(L1, "L1");
  detail::require_length(L2, "L2");
  detail::require_length(L3, "L3");
  const auto sum = numerics::shell_lattice_sum({L1, L2, L3}, 2.0, tol, max_shells);
  const double l4 = quartic(L1);
  auto r = make_geometry_result(spec, -sum.value * l4 / (2.0 * pi * pi), l4, Geometry::torus,
                                {{"L1", L1}, {"L2", L2}, {"L3", L3}, {"tol", tol}});
  r.error_bound = std::abs(sum.error_bound * r.scale * l4 / (2.0 * pi * pi));
  r.inputs["shells"] = sum.shells;
  return r;
}

// ---------------------------------------------------------------------------
// Wedge and cosmic string

/// Printed wedge closed form. The angle is folded so that theta -> alpha - theta
/// is exact.
inline GeometryResult wedge(const FluidSpec& spec, double alpha, double r, double theta) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 2.0 * pi) throw DomainError("alpha must lie in (0, 2 pi]");
  detail::require_length(r, "r");
  if (!std::isfinite(theta) || !(theta > 0.0) || !(theta < alpha)) throw DomainError("theta must lie in (0, alpha)");
  const double s = std::sin(pi * std::min(theta, alpha - theta) / alpha);
  if (std::abs(s) < 1e-12) throw DomainError("field point on a wedge wall");
  const double s2 = s * s;
  const double brace = (pi - alpha) * (pi + alpha) * s2 * ((pi * pi + 11.0 * alpha * alpha) * s2 - 30.0 * pi * pi) +
                       45.0 * pi * pi * pi * pi;
  const double coeff = -brace / (1440.0 * pi * pi * s2 * s2);
  return make_geometry_result(spec, coeff, quartic(r), Geometry::wedge, {{"alpha", alpha}, {"r", r}, {"theta", theta}});
}

inline GeometryResult cosmic_string(const FluidSpec& spec, double alpha, double r) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 2.0 * pi) throw DomainError("alpha must lie in (0, 2 pi]");
  detail::require_length(r, "r");
  const double coeff = (alpha - 2.0 * pi) * (2.0 * pi + alpha) * (11.0 * alpha * alpha + 4.0 * pi * pi) /
                       (1440.0 * pi * pi * quartic(alpha));
  return make_geometry_result(spec, coeff, quartic(r), Geometry::cosmic_string, {{"alpha", alpha}, {"r", r}});
}

enum class ConicalKind { wedge, string };

/// Equal-time, equal-r two-point functions of the relativistic scalar with
/// c -> cS, as functions of the two polar angles.
namespace conical {

inline double csc2(double x) {
  const double s = std::sin(x);
  return 1.0 / (s * s);
}

inline double free_two_point(const FluidSpec& spec, double r, double th, double thp) {
  const double c3 = spec.cS * spec.cS * spec.cS;
  return spec.hbar / (16.0 * pi * pi * c3 * r * r) * csc2(0.5 * (th - thp));
}

inline double wedge_two_point(const FluidSpec& spec, double alpha, double r, double th, double thp) {
  const double c3 = spec.cS * spec.cS * spec.cS;
  return spec.hbar / (16.0 * alpha * alpha * c3 * r * r) *
         (csc2(pi * (th - thp) / (2.0 * alpha)) + csc2(pi * (th + thp) / (2.0 * alpha)));
}

inline double string_two_point(const FluidSpec& spec, double alpha, double r, double th, double thp) {
  const double c3 = spec.cS * spec.cS * spec.cS;
  return spec.hbar / (4.0 * alpha * alpha * c3 * r * r) * csc2(pi * (th - thp) / alpha);
}

}  // namespace conical

struct PointSplitResult {
  double value = 0.0;  // extrapolated <rho^2>_R
  double error_estimate = 0.0;
  numerics::ExtrapolationTable table;
};

/// Thrown when the Richardson table stops improving; carries the table.
class OracleDivergence : public NumericalError {
 public:
  OracleDivergence(const std::string& what, numerics::ExtrapolationTable t)
      : NumericalError(what), table_(std::move(t)) {}
  const numerics::ExtrapolationTable& table() const { return table_; }

 private:
  numerics::ExtrapolationTable table_;
};

/// Splitting ladder Delta_k = Delta_0 / 2^k. Wedge: Delta_0 = min(0.1, 0.1 * distance to the nearer
/// wall). String: Delta_0 = 0.05 alpha, the only scale of its two-point function; a smaller start
/// only adds roundoff from the 1/Delta^2 cancellation.
inline std::vector<double> default_split_ladder(ConicalKind kind, double alpha, double theta, int rungs = 4) {
  const double d0 = kind == ConicalKind::wedge ? std::min(0.1, 0.1 * std::min(theta, alpha - theta))
                                               : 0.05 * alpha;
  std::vector<double> out;
  for (int k = 0; k < rungs; ++k) out.push_back(d0 / double(1 << k));
  return out;
}

/// rho0 (cS^2 / 3 r^2) lim (1 + d^2/dtheta^2) [G - G0](theta, theta'), theta' -> theta.
///
/// For each Delta the operator is applied by five-point differences in theta
/// (step 1.5 Delta, so no stencil point lands within Delta/2 of theta') at
/// fixed theta' = theta + Delta and theta' = theta - Delta. The two splittings
/// are averaged, which leaves an even function of Delta, and the result is
/// extrapolated to Delta = 0 in powers of Delta^2. The 1/Delta^2 poles of G
/// and G0 are never removed analytically.
inline PointSplitResult point_split_oracle(const FluidSpec& spec, ConicalKind kind, double alpha, double r,
                                           double theta, std::vector<double> deltas = {}) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 2.0 * pi) throw DomainError("alpha must lie in (0, 2 pi]");
  detail::require_length(r, "r");
  if (kind == ConicalKind::wedge && !(theta > 0.0 && theta < alpha)) throw DomainError("theta must lie in (0, alpha)");
  if (kind == ConicalKind::string) theta = 0.5 * alpha;  // G depends on theta - theta' only
  if (deltas.empty()) deltas = default_split_ladder(kind, alpha, theta);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw DomainError("splitting angles must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw DomainError("splitting angles must decrease");
  }
  if (kind == ConicalKind::wedge && 4.0 * deltas.front() >= std::min(theta, alpha - theta))
    throw DomainError("splitting angles must be small compared with the distance to the walls");

  auto renormalized = [&](double th, double thp) {
    const double full = kind == ConicalKind::wedge ? conical::wedge_two_point(spec, alpha, r, th, thp)
                                                   : conical::string_two_point(spec, alpha, r, th, thp);
    return full - conical::free_two_point(spec, r, th, thp);
  };

  std::vector<std::pair<double, double>> levels;
  const double pref = spec.rho0 * spec.cS * spec.cS / (3.0 * r * r);
  for (double d : deltas) {
    double op = 0.0;
    for (double thp : {theta + d, theta - d}) {
      auto g = [&](double th) { return renormalized(th, thp); };
      op += 0.5 * (g(theta) + numerics::five_point_second(g, theta, 1.5 * d));
    }
    levels.emplace_back(d * d, pref * op);
  }
  auto table = numerics::richardson(levels, levels.size() - 1);
  const auto& e = table.errors;
  const double noise = 1e-8 * fluctuation_scale(spec, r);
  if (e.size() >= 3 && e.back() > e[e.size() - 2] && e.back() > noise)
    throw OracleDivergence("point-split extrapolation diverges (error estimate grows)", table);
  PointSplitResult out;
  out.value = table.estimate;
  out.error_estimate = table.error_estimate;
  out.table = std::move(table);
  return out;
}

}  // namespace phonon
