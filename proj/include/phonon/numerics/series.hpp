#pragma once

// Truncated power series in one variable, enough to build Laurent expansions
// of trigonometric integrands about a singular endpoint.

#include <cstddef>
#include <vector>

#include "phonon/errors.hpp"

namespace phonon::numerics {

class PowerSeries {
 public:
  explicit PowerSeries(std::size_t n) : c_(n, 0.0) {}
  PowerSeries(std::vector<double> c) : c_(std::move(c)) {}

  std::size_t size() const { return c_.size(); }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  const std::vector<double>& coefficients() const { return c_; }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
    return r;
  }
  friend PowerSeries operator*(double s, PowerSeries a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) a[i] += b[i];
    a.c_.resize(std::min(a.size(), b.size()));
    return a;
  }

  PowerSeries reciprocal() const {
    if (c_.empty() || c_[0] == 0.0) throw DomainError("series reciprocal needs a nonzero constant term");
    PowerSeries r(size());
    r[0] = 1.0 / c_[0];
    for (std::size_t n = 1; n < size(); ++n) {
      double s = 0.0;
      for (std::size_t k = 1; k <= n; ++k) s += c_[k] * r[n - k];
      r[n] = -s / c_[0];
    }
    return r;
  }

  PowerSeries pow(unsigned k) const {
    PowerSeries r(size());
    r[0] = 1.0;
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

 private:
  std::vector<double> c_;
};

/// sin(x)/x, cos(x) and (1 - cos x)/(x^2/2) to n terms.
inline PowerSeries sinc_series(std::size_t n) {
  PowerSeries s(n);
  double fact = 1.0;  // (2k+1)!
  for (std::size_t k = 0; 2 * k < n; ++k) {
    if (k > 0) fact *= double(2 * k) * double(2 * k + 1);
    s[2 * k] = (k % 2 ? -1.0 : 1.0) / fact;
  }
  return s;
}

inline PowerSeries cos_series(std::size_t n) {
  PowerSeries s(n);
  double fact = 1.0;  // (2k)!
  for (std::size_t k = 0; 2 * k < n; ++k) {
    if (k > 0) fact *= double(2 * k - 1) * double(2 * k);
    s[2 * k] = (k % 2 ? -1.0 : 1.0) / fact;
  }
  return s;
}

inline PowerSeries versine_ratio_series(std::size_t n) {
  PowerSeries s(n);
  double fact = 2.0;  // (2k+2)!
  for (std::size_t k = 0; 2 * k < n; ++k) {
    if (k > 0) fact *= double(2 * k + 1) * double(2 * k + 2);
    s[2 * k] = 2.0 * (k % 2 ? -1.0 : 1.0) / fact;
  }
  return s;
}

}  // namespace phonon::numerics
