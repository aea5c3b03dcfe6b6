#pragma once

// Independent reference values shared by the unit and acceptance suites.

#include <cmath>

#include "phonon/core.hpp"

namespace phonon::testing {

// Sum'(l^2 + m^2 + n^2)^-2 from the incomplete-gamma splitting of the Epstein
// zeta function (self-dual unit cube, s = 2):
//   pi^-2 Z = 2 - 1/2 + Sum' G(2, pi q)(pi q)^-2 + Sum' G(-1/2, pi q)(pi q)^(1/2)
inline double epstein_cubic() {
  const double sqrtpi = std::sqrt(pi);
  double acc = 0.0;
  for (int l = -7; l <= 7; ++l)
    for (int m = -7; m <= 7; ++m)
      for (int n = -7; n <= 7; ++n) {
        if (l == 0 && m == 0 && n == 0) continue;
        const double x = pi * (l * l + m * m + n * n);
        const double g2 = (1.0 + x) * std::exp(-x);
        const double gm = 2.0 * (std::exp(-x) / std::sqrt(x) - sqrtpi * std::erfc(std::sqrt(x)));
        acc += g2 / (x * x) + gm * std::sqrt(x);
      }
  return pi * pi * (2.0 - 0.5 + acc);
}

/// The cubic lattice constant frozen from epstein_cubic() before the main build.
inline constexpr double kCubicLatticeConstant = 16.5323159597616696;

}  // namespace phonon::testing
