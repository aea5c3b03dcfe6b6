#pragma once

namespace phonon::numerics {

template <class F>
double central_first(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

/// Five-point O(h^4) first derivative.
template <class F>
double five_point_first(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Five-point O(h^4) second derivative.
template <class F>
double five_point_second(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

}  // namespace phonon::numerics
