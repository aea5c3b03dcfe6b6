#pragma once

// Sum'_{l,m,n} (l^2 L1^2 + m^2 L2^2 + n^2 L3^2)^(-p) over expanding ellipsoidal
// shells R_{k-1} < |u| <= R_k, R_k = k min(L), u = (l L1, m L2, n L3).
//
// After K shells the remainder is replaced by its continuum value plus the
// boundary correction from the exact lattice point count N(R):
//
//   tail(R) = 4 pi R^(3-2p) / ((2p-3) V) - P(R) R^(-2p),   P(R) = N(R) - 4 pi R^3 / (3V)
//
// which leaves an oscillating error of order R^(-2p) times the lattice point
// discrepancy. The reported error bound is the spread of the corrected
// estimates over the trailing quarter of the shells.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "phonon/core.hpp"
#include "phonon/errors.hpp"
#include "phonon/numerics/summation.hpp"

namespace phonon::numerics {

struct LatticeSumResult {
  double value = 0.0;        // partial sum + tail
  double error_bound = 0.0;
  double partial_sum = 0.0;  // shells 1..K only
  double tail = 0.0;
  int shells = 0;
  double radius = 0.0;
  std::int64_t points = 0;   // lattice points with |u| <= radius, origin included
  bool converged = false;
};

namespace detail {

class ShellWalker {
 public:
  ShellWalker(std::array<double, 3> L, double p) : L_(L), p_(p) {
    for (double l : L)
      if (!std::isfinite(l) || !(l > 0.0)) throw DomainError("lattice lengths must be positive");
    if (!(p >= 2.0)) throw DomainError("lattice sum power must be >= 2 for convergence");
    h_ = std::min({L[0], L[1], L[2]});
  }

  double q(std::int64_t l, std::int64_t m, std::int64_t n) const {
    const double a = double(l) * L_[0], b = double(m) * L_[1], c = double(n) * L_[2];
    return a * a + b * b + c * c;
  }

  double radius(int k) const { return double(k) * h_; }

  /// Terms of shell k in ascending magnitude. Appends to `terms` after clearing.
  void shell_terms(int k, std::vector<double>& terms, std::int64_t& count) const {
    terms.clear();
    count = 0;
    const double r_out = radius(k), r_in = radius(k - 1);
    const double out2 = r_out * r_out, in2 = r_in * r_in;
    const auto lmax = std::int64_t(std::floor(r_out / L_[0])) + 1;
    for (std::int64_t l = -lmax; l <= lmax; ++l) {
      const double a = double(l) * L_[0];
      if (a * a > out2) continue;
      const auto mmax = std::int64_t(std::floor(std::sqrt(std::max(0.0, out2 - a * a)) / L_[1])) + 1;
      for (std::int64_t m = -mmax; m <= mmax; ++m) {
        const double b = double(m) * L_[1];
        const double base = a * a + b * b;
        if (base > out2) continue;
        // n >= 0 range with in2 < q <= out2, then mirrored
        auto nhi = std::int64_t(std::floor(std::sqrt(out2 - base) / L_[2])) + 1;
        while (nhi >= 0 && q(l, m, nhi) > out2) --nhi;
        if (nhi < 0) continue;
        auto nlo = in2 > base ? std::int64_t(std::floor(std::sqrt(in2 - base) / L_[2])) - 1 : 0;
        nlo = std::max<std::int64_t>(nlo, 0);
        while (nlo <= nhi && !(q(l, m, nlo) > in2)) ++nlo;
        for (std::int64_t n = nlo; n <= nhi; ++n) {
          const double t = std::pow(q(l, m, n), -p_);
          terms.push_back(t);
          ++count;
          if (n != 0) {
            terms.push_back(t);
            ++count;
          }
        }
      }
    }
    std::sort(terms.begin(), terms.end());
  }

  double tail(double R, std::int64_t points) const {
    const double V = L_[0] * L_[1] * L_[2];
    const double volume_count = 4.0 * pi * R * R * R / (3.0 * V);
    const double discrepancy = double(points) - volume_count;
    return 4.0 * pi * std::pow(R, 3.0 - 2.0 * p_) / ((2.0 * p_ - 3.0) * V) - discrepancy * std::pow(R, -2.0 * p_);
  }

  double max_length() const { return std::max({L_[0], L_[1], L_[2]}); }

 private:
  std::array<double, 3> L_;
  double p_;
  double h_;
};

inline LatticeSumResult run_shells(const ShellWalker& w, int max_shells, double tol, bool fixed) {
  std::vector<double> terms, shell_sums, estimates;
  std::int64_t points = 1;  // origin
  CompensatedSum running;
  LatticeSumResult out;
  for (int k = 1; k <= max_shells; ++k) {
    std::int64_t count = 0;
    w.shell_terms(k, terms, count);
    points += count;
    const double s = compensated_sum(terms);
    shell_sums.push_back(s);
    running.add(s);
    const double R = w.radius(k);
    estimates.push_back(running.value() + w.tail(R, points));

    const int window = std::max(4, k / 4);
    double spread = INFINITY;
    if (k > window) {
      spread = 0.0;
      for (int j = k - window; j < k; ++j) spread = std::max(spread, std::abs(estimates[j - 1] - estimates.back()));
    }
    out.shells = k;
    out.radius = R;
    out.points = points;
    out.error_bound = spread;
    const bool resolved = k >= 8 && R >= 4.0 * w.max_length();
    out.converged = resolved && spread <= tol * std::abs(estimates.back());
    if (!fixed && out.converged) break;
  }
  // final reduction from the outermost (smallest) shell inward
  CompensatedSum total;
  for (auto it = shell_sums.rbegin(); it != shell_sums.rend(); ++it) total.add(*it);
  out.partial_sum = total.value();
  out.tail = w.tail(out.radius, out.points);
  out.value = out.partial_sum + out.tail;
  return out;
}

}  // namespace detail

/// Sum over a fixed number of shells.
inline LatticeSumResult lattice_sum_to_shell(std::array<double, 3> L, double p, int shells) {
  if (shells < 1) throw DomainError("at least one shell required");
  detail::ShellWalker w(L, p);
  auto r = detail::run_shells(w, shells, 0.0, true);
  r.converged = true;
  return r;
}

/// Expands shells until the estimated error drops below tol * |value|.
inline LatticeSumResult shell_lattice_sum(std::array<double, 3> L, double p, double tol, int max_shells = 400) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  detail::ShellWalker w(L, p);
  auto r = detail::run_shells(w, max_shells, tol, false);
  if (!r.converged)
    throw NumericalError("lattice sum did not reach tolerance within " + std::to_string(max_shells) +
                         " shells; error estimate " + std::to_string(r.error_bound));
  return r;
}

}  // namespace phonon::numerics
