#pragma once

// Unit system, fluid parameters and the result type shared by every geometry.

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "phonon/errors.hpp"

namespace phonon {

inline constexpr double pi = std::numbers::pi;

enum class UnitSystem { natural, SI };

inline std::string_view to_string(UnitSystem u) { return u == UnitSystem::natural ? "natural" : "SI"; }

/// Constants of the medium. Construct through make_fluid_spec so the invariants hold.
struct FluidSpec {
  double hbar = 1.0;  // J s
  double rho0 = 1.0;  // kg / m^3
  double cS = 1.0;    // m / s
  UnitSystem units = UnitSystem::natural;
};

namespace detail {
inline void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
}
}  // namespace detail

/// Validates the three magnitudes; natural units then pin them to exactly 1.
inline FluidSpec make_fluid_spec(double hbar, double rho0, double cS, UnitSystem units) {
  detail::require_positive(hbar, "hbar");
  detail::require_positive(rho0, "rho0");
  detail::require_positive(cS, "cS");
  if (units == UnitSystem::natural) return FluidSpec{};
  return FluidSpec{hbar, rho0, cS, units};
}

inline FluidSpec natural_units() { return FluidSpec{}; }

/// hbar rho0 / (cS l^4) given l^4 directly; geometries whose length scale is a
/// product (a^3 b near a mirror focus) pass it this way.
inline double fluctuation_scale_quartic(const FluidSpec& spec, double length4) {
  if (!std::isfinite(length4) || !(length4 > 0.0)) throw DomainError("length must be positive");
  return spec.hbar * spec.rho0 / (spec.cS * length4);
}

/// The universal density-fluctuation scale hbar rho0 / (cS l^4).
inline double fluctuation_scale(const FluidSpec& spec, double length) {
  if (!std::isfinite(length) || !(length > 0.0)) throw DomainError("length must be positive");
  const double l2 = length * length;
  return fluctuation_scale_quartic(spec, l2 * l2);
}

enum class Geometry {
  single_plate,
  parallel_plates,
  parallel_plates_image_sum,
  torus,
  wedge,
  cosmic_string,
  parabolic_focus,
};

inline std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::single_plate: return "single_plate";
    case Geometry::parallel_plates: return "parallel_plates";
    case Geometry::parallel_plates_image_sum: return "parallel_plates_image_sum";
    case Geometry::torus: return "torus";
    case Geometry::wedge: return "wedge";
    case Geometry::cosmic_string: return "cosmic_string";
    case Geometry::parabolic_focus: return "parabolic_focus";
  }
  return "unknown";
}

/// A renormalized mean squared density. `value == coefficient * scale` holds
/// bit-for-bit because value is always formed as that product.
struct GeometryResult {
  double value = 0.0;
  double coefficient = 0.0;
  double scale = 0.0;
  Geometry geometry = Geometry::single_plate;
  std::map<std::string, double> inputs;
  double error_bound = 0.0;
  std::vector<std::string> warnings;
};

inline GeometryResult make_geometry_result(const FluidSpec& spec, double coefficient, double length4,
                                           Geometry geometry, std::map<std::string, double> inputs) {
  GeometryResult r;
  r.coefficient = coefficient;
  r.scale = fluctuation_scale_quartic(spec, length4);
  r.value = r.coefficient * r.scale;
  r.geometry = geometry;
  r.inputs = std::move(inputs);
  return r;
}

inline double quartic(double x) {
  const double x2 = x * x;
  return x2 * x2;
}

}  // namespace phonon
