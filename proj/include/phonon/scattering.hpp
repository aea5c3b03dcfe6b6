#pragma once

// Brillouin scattering of light by zero-point density fluctuations, the
// thermal factors of the Stokes and anti-Stokes lines, and the ratio R of
// zero-point to thermal scattering on the Stokes line.
//
// Natural units put hbar = cS = rho0 = c = k_B = 1. SI uses the exact SI
// values of c and k_B together with the hbar carried by the FluidSpec.

#include <cmath>
#include <cstdint>
#include <ratio>
#include <string>

#include "phonon/core.hpp"

namespace phonon {

struct LightConstants {
  double c = 1.0;   // m / s
  double kB = 1.0;  // J / K
};

inline LightConstants light_constants(UnitSystem u) {
  if (u == UnitSystem::natural) return {};
  return {299792458.0, 1.380649e-23};
}

inline constexpr double hbar_SI = 1.054571817e-34;

struct MaterialOptics {
  std::string name;
  double eta = 1.0;       // refractive index
  double depsdrho = 1.0;  // rho0 (d eps / d rho0)_S
  double T = 0.0;         // K

  void validate() const {
    if (!std::isfinite(eta) || !(eta >= 1.0)) throw DomainError("eta must be at least 1");
    if (!std::isfinite(depsdrho) || !(depsdrho > 0.0)) throw DomainError("depsdrho must be positive");
    if (!std::isfinite(T) || !(T >= 0.0)) throw DomainError("T must be non-negative");
  }
};

struct ScatteringKinematics {
  double omega = 1.0;   // incident angular frequency
  double theta = pi;    // scattering angle
  double volume = 1.0;  // scattering volume
  double pol_dot = 1.0;

  void validate() const {
    if (!std::isfinite(omega) || !(omega > 0.0)) throw DomainError("omega must be positive");
    if (!std::isfinite(volume) || !(volume > 0.0)) throw DomainError("volume must be positive");
    if (!(theta >= 0.0 && theta <= pi)) throw DomainError("theta must lie in [0, pi]");
    if (!(std::abs(pol_dot) <= 1.0)) throw DomainError("|pol_dot| must not exceed 1");
  }
};

/// sqrt(2 (1 - cos theta)) = 2 sin(theta/2), written without cancellation.
inline double angular_factor(double theta) { return 2.0 * std::sin(0.5 * theta); }

/// Frequency of the phonon created in the scattering: cS |k - k'|, |k| = eta omega / c.
inline double phonon_frequency(const FluidSpec& spec, const MaterialOptics& mat, const ScatteringKinematics& kin) {
  const auto lc = light_constants(spec.units);
  return spec.cS * mat.eta * kin.omega / lc.c * angular_factor(kin.theta);
}

inline double zp_cross_section(const FluidSpec& spec, const MaterialOptics& mat, const ScatteringKinematics& kin) {
  mat.validate();
  kin.validate();
  const double c = light_constants(spec.units).c;
  const double w2 = kin.omega * kin.omega;
  const double c2 = c * c;
  const double eta2 = mat.eta * mat.eta;
  return angular_factor(kin.theta) * spec.hbar * w2 * w2 * kin.omega * kin.volume * eta2 * eta2 /
         (32.0 * pi * pi * c2 * c2 * c * spec.cS * spec.rho0) * kin.pol_dot * kin.pol_dot;
}

namespace detail {
inline double reduced_energy(const FluidSpec& spec, double Omega_q, double T) {
  if (!std::isfinite(Omega_q) || !(Omega_q > 0.0)) throw DomainError("Omega_q must be positive");
  if (!(T >= 0.0) || std::isnan(T)) throw DomainError("T must be non-negative");
  return spec.hbar * Omega_q / (light_constants(spec.units).kB * T);  // +inf at T = 0
}
}  // namespace detail

/// Bose occupation 1/(exp(hbar Omega / k_B T) - 1); 0 at T = 0.
inline double occupation(const FluidSpec& spec, double Omega_q, double T) {
  const double x = detail::reduced_energy(spec, Omega_q, T);
  if (std::isinf(x)) return 0.0;
  return 1.0 / std::expm1(x);
}

inline double stokes_factor(const FluidSpec& spec, double Omega_q, double T) {
  return occupation(spec, Omega_q, T) + 1.0;
}

/// 2 <n> + 1, checked against coth(hbar Omega / 2 k_B T) on every call.
inline double total_factor(const FluidSpec& spec, double Omega_q, double T) {
  const double x = detail::reduced_energy(spec, Omega_q, T);
  const double v = 2.0 * occupation(spec, Omega_q, T) + 1.0;
  const double coth = std::isinf(x) ? 1.0 : 1.0 / std::tanh(0.5 * x);
  if (!(std::abs(v - coth) <= 1e-12 * std::abs(coth)))
    throw NumericalError("2<n>+1 disagrees with coth(hbar Omega / 2 k_B T)");
  return v;
}

/// Ratio of zero-point to thermal scattering on the Stokes line.
inline double thermal_ratio(const FluidSpec& spec, const MaterialOptics& mat, const ScatteringKinematics& kin) {
  mat.validate();
  kin.validate();
  if (mat.T == 0.0) throw DomainError("R is infinite at T = 0: zero-point scattering is the only contribution");
  const auto lc = light_constants(spec.units);
  const double eta2 = mat.eta * mat.eta;
  return angular_factor(kin.theta) * (spec.hbar * kin.omega / (2.0 * lc.kB * mat.T)) * (spec.cS / lc.c) * eta2 *
         eta2 / (mat.depsdrho * mat.depsdrho);
}

struct Fraction {
  std::intmax_t num;
  std::intmax_t den;
  double value() const { return double(num) / double(den); }
};

/// Share of the zero-point cross section left in the Stokes line at k_B T >> hbar Omega.
inline constexpr Fraction high_temp_zp_fraction() {
  using r = std::ratio<1, 2>;
  return {r::num, r::den};
}

/// At T = 0 the Stokes line is entirely zero-point.
inline constexpr Fraction zero_temp_zp_fraction() { return {1, 1}; }

}  // namespace phonon
