#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "phonon/errors.hpp"

namespace phonon::numerics {

/// Polynomial extrapolation of a sequence v(h) to h = 0.
struct ExtrapolationTable {
  std::vector<std::pair<double, double>> levels;  // (h, v), h strictly decreasing
  std::vector<double> diagonal;  // best estimate using levels [0, k]
  std::vector<double> errors;    // |diagonal[k] - diagonal[k-1]|, errors[0] = inf
  double estimate = 0.0;
  double error_estimate = 0.0;
};

/// Neville's algorithm evaluated at h = 0. `order` caps the polynomial degree
/// (order = 1 eliminates the O(h) term, and so on).
inline ExtrapolationTable richardson(std::span<const std::pair<double, double>> levels, std::size_t order) {
  if (levels.empty()) throw DomainError("richardson: at least one level required");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i].first < levels[i - 1].first))
      throw DomainError("richardson: levels must be strictly decreasing in parameter");

  ExtrapolationTable out;
  out.levels.assign(levels.begin(), levels.end());
  const std::size_t n = levels.size();
  std::vector<std::vector<double>> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cols = std::min(i, order) + 1;
    t[i].resize(cols);
    t[i][0] = levels[i].second;
    for (std::size_t j = 1; j < cols; ++j) {
      const double hi = levels[i].first;
      const double hij = levels[i - j].first;
      t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) * hi / (hij - hi);
    }
    out.diagonal.push_back(t[i].back());
    out.errors.push_back(i == 0 ? INFINITY : std::abs(out.diagonal[i] - out.diagonal[i - 1]));
  }
  out.estimate = out.diagonal.back();
  out.error_estimate = n == 1 ? 0.0 : out.errors.back();
  return out;
}

}  // namespace phonon::numerics
