#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "phonon/errors.hpp"

namespace phonon::numerics {

/// Bisection on [lo, hi] until the bracket is narrower than `tol`.
template <class F>
double bracketed_root(F&& f, double lo, double hi, double tol = 1e-10) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) throw DomainError("bracketed_root: no sign change on bracket");
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::bisect(
      f, lo, hi, [tol](double a, double b) { return std::abs(b - a) <= tol; }, max_iter);
  return 0.5 * (r.first + r.second);
}

}  // namespace phonon::numerics
