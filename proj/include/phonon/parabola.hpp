#pragma once

// Ray geometry near the focus of a parabolic mirror and the resulting
// <rho^2>_R at a point a distance a from the focus.
//
// Angles: theta is the incident ray, theta' the reflected ray reaching the
// field point P at polar angle gamma. theta = (a/b) f(theta'). Two reflected
// rays alpha, beta with f(alpha) = f(beta) interfere with path difference dl.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "phonon/core.hpp"
#include "phonon/numerics/finite_part.hpp"
#include "phonon/numerics/roots.hpp"
#include "phonon/numerics/series.hpp"

namespace phonon {

/// The two-ray regime ends where 2 cos(theta') + 1 vanishes.
inline constexpr double max_aperture = 2.0 * pi / 3.0 - 1e-9;

struct MirrorConfig {
  double a = 0.0;       // focus to field point
  double b = 0.0;       // mirror sits at b/2 from the focus
  double gamma = pi / 2;
  double theta0 = 0.0;  // angular aperture
  double max_aspect = 0.01;

  void validate() const {
    if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("a must be positive");
    if (!std::isfinite(b) || !(b > 0.0)) throw DomainError("b must be positive");
    if (!(max_aspect > 0.0)) throw DomainError("max_aspect must be positive");
    if (!(a / b < max_aspect)) throw DomainError("a/b must be below max_aspect (field point close to the focus)");
    if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
    if (!(theta0 > 0.0) || !(theta0 < max_aperture)) throw DomainError("theta0 must lie in (0, 2 pi/3)");
  }
};

struct RayPair {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double dl = 0.0;          // dl1 - dl2
  double dl1 = 0.0;
  double dl2 = 0.0;
  double dl_expanded = 0.0;  // the expanded single-bracket form; equals dl when the |.| in dl1 is inactive
};

/// -(1 + cos t) sin(t - gamma). Away from t = 0 the sin^2 t / (1 - cos t) form is cross-checked.
inline double mirror_f(double gamma, double theta_p) {
  if (!(theta_p > -pi && theta_p < pi)) throw DomainError("theta' must lie in (-pi, pi)");
  const double v = -(1.0 + std::cos(theta_p)) * std::sin(theta_p - gamma);
  if (std::abs(theta_p) > 1e-3) {
    const double s = std::sin(theta_p);
    const double h = std::sin(0.5 * theta_p);
    const double alt = -s * s * std::sin(theta_p - gamma) / (2.0 * h * h);
    if (std::abs(alt - v) > 1e-14 * std::max(1.0, std::abs(v)) + 64 * std::numeric_limits<double>::epsilon())
      throw NumericalError("reflection map: the two forms of f disagree");
  }
  return v;
}

inline double mirror_f_prime(double gamma, double theta_p) {
  if (!(theta_p > -pi && theta_p < pi)) throw DomainError("theta' must lie in (-pi, pi)");
  return std::sin(theta_p) * std::sin(theta_p - gamma) - (1.0 + std::cos(theta_p)) * std::cos(theta_p - gamma);
}

/// The other reflected angle beta != alpha in (-theta0, theta0) with f(beta) = f(alpha).
inline double conjugate_angle(double gamma, double alpha, double theta0) {
  if (!(theta0 > 0.0) || !(theta0 < max_aperture)) throw DomainError("theta0 must lie in (0, 2 pi/3)");
  if (!(alpha > 0.0) || !(alpha < theta0)) throw DomainError("alpha must lie in (0, theta0)");
  const double target = mirror_f(gamma, alpha);
  auto h = [&](double x) { return mirror_f(gamma, x) - target; };

  constexpr int kGrid = 1000;
  const double guard = 1e-7;
  std::vector<double> xs;
  xs.reserve(kGrid + 3);
  for (int i = 0; i <= kGrid; ++i) xs.push_back(-theta0 + 2.0 * theta0 * i / kGrid);
  xs.front() = std::nextafter(-theta0, 0.0);
  xs.back() = std::nextafter(theta0, 0.0);
  xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return std::abs(x - alpha) <= guard; }), xs.end());
  xs.push_back(alpha - guard);
  xs.push_back(alpha + guard);
  std::sort(xs.begin(), xs.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double lo = xs[i], hi = xs[i + 1];
    if (lo >= alpha - guard && hi <= alpha + guard) continue;
    const double hl = h(lo), hh = h(hi);
    if (hl == 0.0) {
      roots.push_back(lo);
    } else if (hl * hh < 0.0) {
      roots.push_back(numerics::bracketed_root(h, lo, hi, 1e-13));
    }
  }
  if (roots.empty()) throw DomainError("no conjugate ray inside the aperture (single-reflection region)");
  if (roots.size() > 1) throw DomainError("more than one conjugate ray; aperture outside the two-ray regime");
  return roots.front();
}

/// dl1, dl2 and their difference for the reflected pair (alpha, beta).
inline RayPair path_difference(double a, double gamma, double alpha, double beta) {
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("a must be positive");
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  RayPair p;
  p.alpha = alpha;
  p.beta = beta;
  p.dl1 = a * std::abs(cg * (ca - cb) + sg * (sa - sb));
  p.dl2 = a * (sb * std::sin(beta - gamma) - sa * std::sin(alpha - gamma));
  p.dl = p.dl1 - p.dl2;
  p.dl_expanded = a * (cg * (ca - cb + sa * sa - sb * sb) + sg * (sa - sb + sb * cb - sa * ca));
  return p;
}

/// Conjugate pairing plus path difference for one reflected angle.
inline RayPair ray_pair(const MirrorConfig& cfg, double alpha) {
  cfg.validate();
  const double beta = conjugate_angle(cfg.gamma, alpha, cfg.theta0);
  RayPair p = path_difference(cfg.a, cfg.gamma, alpha, beta);
  p.theta = cfg.a / cfg.b * mirror_f(cfg.gamma, alpha);
  return p;
}

inline double g_closed(double theta0) {
  if (!(theta0 > 0.0) || !(theta0 < 2.0 * pi / 3.0)) throw DomainError("theta0 must lie in (0, 2 pi/3)");
  const double c = std::cos(theta0);
  const double c2 = c * c;
  const double num = 30.0 * c2 * c2 * c - 120.0 * c2 * c2 + 160.0 * c2 * c - 40.0 * c2 - 94.0 * c - 224.0;
  const double om = 1.0 - c;
  const double om2 = om * om;
  return std::log((1.0 + c) / om) + num / (15.0 * (1.0 + c) * om2 * om2 * om);
}

/// (2 cos x + 1) / (sin^3 x (1 - cos x)^4), the alpha integrand at gamma = pi/2.
inline double focus_kernel(double x) {
  const double s = std::sin(x);
  const double v = 2.0 * std::sin(0.5 * x) * std::sin(0.5 * x);  // 1 - cos x without cancellation
  const double v2 = v * v;
  return (2.0 * std::cos(x) + 1.0) / (s * s * s * v2 * v2);
}

enum class MirrorShape { revolution, cylinder };

inline double shape_factor(MirrorShape s) { return s == MirrorShape::cylinder ? 16.0 / (15.0 * pi) : 1.0; }

/// <rho^2>_R at gamma = pi/2: 3 hbar rho0 g(theta0) / (4096 pi^2 cS a^3 b).
/// inputs["C"] is the dimensionless constant in -hbar rho0 C / (cS b a^3).
inline GeometryResult rho2_focus(const FluidSpec& spec, const MirrorConfig& cfg,
                                 MirrorShape shape = MirrorShape::revolution) {
  cfg.validate();
  if (cfg.gamma != pi / 2)
    throw DomainError("closed form exists only for gamma = pi/2; use the ray geometry and finite-part integral");
  const double coeff = 3.0 * g_closed(cfg.theta0) / (4096.0 * pi * pi) * shape_factor(shape);
  auto r = make_geometry_result(spec, coeff, cfg.a * cfg.a * cfg.a * cfg.b, Geometry::parabolic_focus,
                                {{"a", cfg.a}, {"b", cfg.b}, {"gamma", cfg.gamma}, {"theta0", cfg.theta0},
                                 {"g", g_closed(cfg.theta0)}, {"C", -coeff},
                                 {"cylinder", shape == MirrorShape::cylinder ? 1.0 : 0.0}});
  return r;
}

struct FocusIntegrand {
  double composed = 0.0;  // -(3 hbar rho0 / 2 pi^2 cS) (a/b) f'(alpha) / dl^4
  double printed = 0.0;   // (3 hbar rho0 / 32 pi^2 cS a^3 b) * focus_kernel(alpha)
};

/// Integrand in alpha (integrated from 0 to theta0) built two ways. Returns
/// +inf in both slots once dl^4 underflows near alpha = 0, where only the
/// finite part of the integral is meaningful.
inline FocusIntegrand assemble_integrand(const FluidSpec& spec, const MirrorConfig& cfg, double alpha) {
  cfg.validate();
  if (cfg.gamma != pi / 2) throw DomainError("integrand assembly is implemented for gamma = pi/2 only");
  if (!(alpha > 0.0) || !(alpha < cfg.theta0)) throw DomainError("alpha must lie in (0, theta0)");
  const double inf = std::numeric_limits<double>::infinity();
  const double dl = path_difference(cfg.a, cfg.gamma, alpha, -alpha).dl;
  const double dl4 = dl * dl * dl * dl;
  const double base = spec.hbar * spec.rho0 / spec.cS;
  FocusIntegrand out;
  out.composed = -(3.0 * base / (2.0 * pi * pi)) * (cfg.a / cfg.b) * mirror_f_prime(cfg.gamma, alpha) / dl4;
  out.printed = 3.0 * base / (32.0 * pi * pi * cfg.a * cfg.a * cfg.a * cfg.b) * focus_kernel(alpha);
  if (!(dl4 > 0.0) || !std::isfinite(out.composed) || !std::isfinite(out.printed)) out.composed = out.printed = inf;
  return out;
}

/// Laurent expansion of focus_kernel about 0: coefficients of x^(j-11), j < terms.
inline numerics::EndpointExpansion focus_kernel_expansion(std::size_t terms = 64) {
  using numerics::PowerSeries;
  // sin x = x S(x), 1 - cos x = (x^2/2) V(x), so the kernel is 16 (2 cos x + 1) / (x^11 S^3 V^4).
  const std::size_t n = terms;
  PowerSeries top = 2.0 * numerics::cos_series(n);
  top[0] += 1.0;
  const PowerSeries den = numerics::sinc_series(n).pow(3) * numerics::versine_ratio_series(n).pow(4);
  const PowerSeries q = 16.0 * (top * den.reciprocal());
  numerics::EndpointExpansion e;
  e.leading_power = 11;
  e.coefficients = q.coefficients();
  e.series_switch = 1.0;
  return e;
}

/// Hadamard finite part of int_0^theta0 focus_kernel.
inline numerics::QuadratureResult focus_kernel_finite_part(double theta0, double tol = 1e-11) {
  if (!(theta0 > 0.0) || !(theta0 < 2.0 * pi / 3.0)) throw DomainError("theta0 must lie in (0, 2 pi/3)");
  static const numerics::EndpointExpansion e = focus_kernel_expansion();
  return numerics::finite_part_integral(focus_kernel, 0.0, theta0, e, tol);
}

}  // namespace phonon
