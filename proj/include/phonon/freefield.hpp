#pragma once

// Boundaryless density correlation functions and the regulated Fourier
// integral that checks them.

#include <array>
#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

#include "phonon/core.hpp"
#include "phonon/numerics/quadrature.hpp"
#include "phonon/numerics/richardson.hpp"

namespace phonon {

struct SpacetimeSeparation {
  double dx = 0.0;  // |x - x'|, m
  double dt = 0.0;  // t - t', s
};

inline void validate(const SpacetimeSeparation& s) {
  if (!std::isfinite(s.dx) || !std::isfinite(s.dt)) throw DomainError("separation must be finite");
  if (s.dx < 0.0) throw DomainError("dx must be >= 0");
}

/// `as_printed` carries the factor 3 inside the denominator; `standard` is the
/// form obtained by evaluating the momentum integral.
enum class CorrelationVariant { as_printed, standard };

inline std::string_view to_string(CorrelationVariant v) {
  return v == CorrelationVariant::as_printed ? "printed" : "standard";
}

enum class CorrelationSign { anticorrelated, correlated, on_cone };

inline std::string_view to_string(CorrelationSign s) {
  switch (s) {
    case CorrelationSign::anticorrelated: return "anticorrelated";
    case CorrelationSign::correlated: return "correlated";
    case CorrelationSign::on_cone: return "on_cone";
  }
  return "unknown";
}

namespace detail {
inline constexpr double kConeTolerance = 1e-12;

inline double cone_factor(CorrelationVariant v) { return v == CorrelationVariant::as_printed ? 3.0 : 1.0; }

// dx^2 - k cS^2 dt^2 and the scale it is compared against
inline std::array<double, 2> cone_denominator(const FluidSpec& spec, const SpacetimeSeparation& s,
                                              CorrelationVariant v) {
  const double x2 = s.dx * s.dx;
  const double t2 = spec.cS * spec.cS * s.dt * s.dt;
  return {x2 - cone_factor(v) * t2, x2 + t2};
}
}  // namespace detail

inline double correlation(const FluidSpec& spec, const SpacetimeSeparation& sep,
                          CorrelationVariant variant = CorrelationVariant::standard) {
  validate(sep);
  const auto [den, norm] = detail::cone_denominator(spec, sep, variant);
  if (!(std::abs(den) > detail::kConeTolerance * norm))
    throw DomainError(variant == CorrelationVariant::as_printed
                          ? "separation on the singular surface dx^2 = 3 cS^2 dt^2"
                          : "separation on the sound cone dx = cS |dt|");
  const double num = sep.dx * sep.dx + 3.0 * spec.cS * spec.cS * sep.dt * sep.dt;
  return -spec.hbar * spec.rho0 / (2.0 * pi * pi * spec.cS) * num / (den * den * den);
}

inline double equal_time_correlation(const FluidSpec& spec, double dx) {
  if (!std::isfinite(dx) || !(dx > 0.0)) throw DomainError("dx must be positive");
  return -spec.hbar * spec.rho0 / (2.0 * pi * pi * spec.cS * quartic(dx));
}

inline CorrelationSign correlation_sign(const FluidSpec& spec, const SpacetimeSeparation& sep,
                                        CorrelationVariant variant = CorrelationVariant::standard) {
  validate(sep);
  const auto [den, norm] = detail::cone_denominator(spec, sep, variant);
  if (!(std::abs(den) > detail::kConeTolerance * norm)) return CorrelationSign::on_cone;
  // numerator is positive off the origin, so the sign is that of -den^3
  return den > 0.0 ? CorrelationSign::anticorrelated : CorrelationSign::correlated;
}

/// hbar rho0 / (16 pi^3 cS^2) int d^3q Omega_q e^{i(q.dx - Omega_q dt)} e^{-eps q}
/// with the angular and radial integrals done analytically: s = eps + i cS dt,
///   int_0^inf q^2 sin(qR) e^{-sq} dq = [(s - iR)^-3 - (s + iR)^-3] / i.
inline std::complex<double> fourier_oracle_complex(const FluidSpec& spec, const SpacetimeSeparation& sep,
                                                   double epsilon) {
  validate(sep);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  using C = std::complex<double>;
  const C s(epsilon, spec.cS * sep.dt);
  const double c = spec.cS;
  const double R = sep.dx;
  C radial;  // int d^3q q e^{iq.x - sq}, in units of cS
  if (R == 0.0) {
    radial = 4.0 * pi * 6.0 / (s * s * s * s);
  } else {
    const C I(0.0, R);
    const C a = s - I, b = s + I;
    radial = (4.0 * pi / R) * (1.0 / (a * a * a) - 1.0 / (b * b * b)) / C(0.0, 1.0);
  }
  return spec.hbar * spec.rho0 / (16.0 * pi * pi * pi * c * c) * c * radial;
}

inline double fourier_oracle(const FluidSpec& spec, const SpacetimeSeparation& sep, double epsilon) {
  return fourier_oracle_complex(spec, sep, epsilon).real();
}

/// Same integral with the radial q-integral done by adaptive quadrature
/// (angular part still analytic). Cross-checks the closed reduction.
inline std::complex<double> fourier_oracle_quadrature(const FluidSpec& spec, const SpacetimeSeparation& sep,
                                                      double epsilon, double tol = 1e-11) {
  validate(sep);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double R = sep.dx;
  const double T = spec.cS * sep.dt;
  auto kernel = [&](double q) { return R == 0.0 ? q * q * q : q * q * std::sin(q * R) / R; };
  const double qmax = 60.0 / epsilon;  // e^{-60} cutoff
  // panels of about one oscillation each keep the adaptive rule honest
  const double period = 2.0 * pi / std::max({R, std::abs(T), epsilon});
  const int panels = std::max(1, int(std::ceil(qmax / period)));
  double re = 0.0, im = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = qmax * k / panels, hi = qmax * (k + 1) / panels;
    re += numerics::adaptive_quadrature([&](double q) { return kernel(q) * std::exp(-epsilon * q) * std::cos(q * T); },
                                        lo, hi, tol).value;
    im -= numerics::adaptive_quadrature([&](double q) { return kernel(q) * std::exp(-epsilon * q) * std::sin(q * T); },
                                        lo, hi, tol).value;
  }
  const double pref = spec.hbar * spec.rho0 / (16.0 * pi * pi * pi * spec.cS * spec.cS) * spec.cS * 4.0 * pi;
  return {pref * re, pref * im};
}

struct ExtrapolatedOracle {
  double value = 0.0;
  double imaginary = 0.0;  // extrapolated imaginary part, vanishes off the cone
  numerics::ExtrapolationTable table;
};

/// Richardson extrapolation eps -> 0 over eps_k = eps0 / 2^k.
inline ExtrapolatedOracle fourier_oracle_extrapolated(const FluidSpec& spec, const SpacetimeSeparation& sep,
                                                      int rungs = 6, double eps0 = 0.0) {
  validate(sep);
  const double len = sep.dx > 0.0 ? sep.dx : spec.cS * std::abs(sep.dt);
  if (!(len > 0.0)) throw DomainError("oracle needs a nonzero separation");
  if (eps0 <= 0.0) eps0 = 0.1 * len;
  std::vector<std::pair<double, double>> re, im;
  for (int k = 0; k < rungs; ++k) {
    const double eps = eps0 / double(1 << k);
    const auto v = fourier_oracle_complex(spec, sep, eps);
    re.emplace_back(eps, v.real());
    im.emplace_back(eps, v.imag());
  }
  ExtrapolatedOracle out;
  out.table = numerics::richardson(re, rungs - 1);
  out.value = out.table.estimate;
  out.imaginary = numerics::richardson(im, rungs - 1).estimate;
  if (std::abs(out.imaginary) > 1e-6 * std::abs(out.value))
    throw NumericalError("Fourier oracle imaginary part did not vanish; separation too close to the cone");
  return out;
}

/// Sound energy density cS^2 drho^2 / rho0 for a scalar amplitude.
inline double energy_density(const FluidSpec& spec, double rho_fluctuation) {
  return spec.cS * spec.cS / spec.rho0 * rho_fluctuation * rho_fluctuation;
}

}  // namespace phonon
