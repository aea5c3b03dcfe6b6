#pragma once

// Density-fluctuation shift of a single-mode squeezed vacuum relative to the
// vacuum, for a plane wave along z.

#include <cmath>

#include "phonon/core.hpp"

namespace phonon {

struct SqueezeState {
  double r = 0.0;      // squeeze magnitude
  double delta = 0.0;  // squeeze phase, rad
  double omega = 1.0;  // rad / s
  double k = 1.0;      // 1 / m
  double V = 1.0;      // quantization volume, m^3
};

/// Checks r >= 0, V > 0 and the linear dispersion omega = cS k.
inline void validate(const FluidSpec& spec, const SqueezeState& s) {
  if (!std::isfinite(s.r) || s.r < 0.0) throw DomainError("squeeze magnitude r must be >= 0");
  if (!std::isfinite(s.delta)) throw DomainError("squeeze phase must be finite");
  if (!std::isfinite(s.V) || !(s.V > 0.0)) throw DomainError("quantization volume V must be positive");
  if (!std::isfinite(s.omega) || !(s.omega > 0.0)) throw DomainError("omega must be positive");
  if (!(std::abs(s.omega - spec.cS * s.k) <= 1e-12 * s.omega))
    throw DomainError("omega must equal cS * k (linear dispersion)");
}

/// hbar omega rho0 / (cS^2 V)
inline double squeeze_prefactor(const FluidSpec& spec, const SqueezeState& s) {
  validate(spec, s);
  return spec.hbar * s.omega * spec.rho0 / (spec.cS * spec.cS * s.V);
}

/// Dimensionless shape sinh r (sinh r - cosh r cos(2 phase + delta)), phase = kz - omega t.
inline double squeezed_shape(double r, double delta, double phase) {
  return std::sinh(r) * (std::sinh(r) - std::cosh(r) * std::cos(2.0 * phase + delta));
}

inline double squeezed_variance(const FluidSpec& spec, const SqueezeState& s, double z, double t) {
  return squeeze_prefactor(spec, s) * squeezed_shape(s.r, s.delta, s.k * z - s.omega * t);
}

/// Average over one period in z or t; the cosine term drops out.
inline double squeezed_average(const FluidSpec& spec, const SqueezeState& s) {
  const double sh = std::sinh(s.r);
  return squeeze_prefactor(spec, s) * sh * sh;
}

struct SqueezeExtrema {
  double min = 0.0;
  double max = 0.0;
};

/// min = -P (1 - e^{-2r}) / 2, max = P (e^{2r} - 1) / 2.
inline SqueezeExtrema squeezed_extrema(const FluidSpec& spec, const SqueezeState& s) {
  const double p = squeeze_prefactor(spec, s);
  return {0.5 * p * std::expm1(-2.0 * s.r), 0.5 * p * std::expm1(2.0 * s.r)};
}

}  // namespace phonon
