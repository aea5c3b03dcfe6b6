#pragma once

// Truncated number-basis representation of a single bosonic mode and the
// squeeze unitary S(zeta) = exp(1/2 (zeta* a^2 - zeta a^dagger^2)), built from
// the spectral decomposition of the anti-Hermitian generator.

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "phonon/errors.hpp"

namespace phonon::numerics {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Lowering operator: sqrt(n) on the first superdiagonal.
inline CMatrix lowering_operator(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

/// The generator only couples n to n +/- 2, so the even and odd sectors are
/// exponentiated separately.
inline CMatrix squeeze_operator(double r, double delta, int dim) {
  const std::complex<double> zeta = std::polar(r, delta);
  CMatrix S = CMatrix::Zero(dim, dim);
  for (int parity = 0; parity < 2; ++parity) {
    const int m = (dim - parity + 1) / 2;
    CMatrix gen = CMatrix::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
      const double n = 2.0 * i + parity;  // <n|a^2|n+2> = sqrt((n+1)(n+2))
      const double amp = std::sqrt((n + 1.0) * (n + 2.0));
      gen(i, i + 1) = 0.5 * std::conj(zeta) * amp;
      gen(i + 1, i) = -0.5 * zeta * amp;
    }
    // gen is anti-Hermitian: exp(gen) = V diag(e^{i lambda}) V^dagger with -i gen = V diag(lambda) V^dagger
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(std::complex<double>(0.0, -1.0) * gen);
    if (eig.info() != Eigen::Success) throw NumericalError("eigensolver failed on the squeeze generator");
    const CVector phases = (std::complex<double>(0.0, 1.0) * eig.eigenvalues().cast<std::complex<double>>()).array().exp();
    const CMatrix block = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) S(2 * i + parity, 2 * j + parity) = block(i, j);
  }
  return S;
}

/// Squeezed vacuum in a number basis grown until the top five occupancies are
/// negligible and the leading `kCheckBlock` x `kCheckBlock` block of
/// S^dagger a S matches the Bogoliubov form.
class SqueezedFockState {
 public:
  static constexpr int kCheckBlock = 6;
  static constexpr double kBogoliubovTol = 1e-9;
  static constexpr double kTopOccupancy = 1e-10;
  static constexpr int kMaxDim = 2000;

  SqueezedFockState(double r, double delta, int min_dim = 60) : r_(r), delta_(delta) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeeze magnitude r must be >= 0");
    if (r > 2.0) throw DomainError("squeeze magnitude r > 2 is beyond the Fock oracle's validity guard");
    if (min_dim < 40) throw DomainError("Fock truncation dim must be >= 40");
    int dim = min_dim;
    for (;;) {
      build(dim);
      if (top_occupancy_ < kTopOccupancy && bogoliubov_defect_ < kBogoliubovTol) break;
      dim = int(std::ceil(dim * (top_occupancy_ < kTopOccupancy ? 1.2 : 1.5)));
      if (dim > kMaxDim) throw NumericalError("Fock truncation exceeded the dimension cap");
    }
    unitarity_defect_ = (S_.adjoint() * S_ - CMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    if (unitarity_defect_ > 1e-8)
      throw NumericalError("squeeze operator unitarity defect " + std::to_string(unitarity_defect_) +
                           "; increase dim");
  }

  int dim() const { return dim_; }
  double top_occupancy() const { return top_occupancy_; }
  double unitarity_defect() const { return unitarity_defect_; }
  double bogoliubov_defect() const { return bogoliubov_defect_; }
  const CVector& state() const { return psi_; }
  const CMatrix& squeeze() const { return S_; }

  /// (<zeta|X^2|zeta> - <0|X^2|0>) / 2 with X = a e^{i phase} + a^dagger e^{-i phase}.
  double variance_coefficient(double phase) const {
    const std::complex<double> e = std::polar(1.0, phase);
    const CVector x_psi = e * (a_ * psi_) + std::conj(e) * (a_.adjoint() * psi_);
    // the a^dagger component pushed past the cutoff
    const double spill = double(dim_) * std::norm(psi_(dim_ - 1));
    return 0.5 * (x_psi.squaredNorm() + spill - 1.0);
  }

 private:
  void build(int dim) {
    dim_ = dim;
    a_ = lowering_operator(dim);
    S_ = squeeze_operator(r_, delta_, dim);
    psi_ = S_.col(0);
    top_occupancy_ = 0.0;
    for (int n = dim - 5; n < dim; ++n) top_occupancy_ = std::max(top_occupancy_, std::norm(psi_(n)));
    const int b = std::min(kCheckBlock, dim - 5);
    const CMatrix lead = S_.leftCols(b);
    const CMatrix lhs = lead.adjoint() * (a_ * lead);
    const CMatrix rhs = (a_ * std::cosh(r_) - a_.adjoint() * std::polar(std::sinh(r_), delta_)).topLeftCorner(b, b);
    bogoliubov_defect_ = (lhs - rhs).cwiseAbs().maxCoeff();
  }

  double r_, delta_;
  int dim_ = 0;
  CMatrix a_, S_;
  CVector psi_;
  double top_occupancy_ = 1.0;
  double unitarity_defect_ = 0.0;
  double bogoliubov_defect_ = 0.0;
};

/// One-shot oracle value of sinh r (sinh r - cosh r cos(2 phase + delta)).
inline double fock_squeezed_variance(double r, double delta, double phase, int dim = 60) {
  const SqueezedFockState s(r, delta, dim);
  if (s.bogoliubov_defect() > 1e-8)
    throw NumericalError("Bogoliubov identity violated by " + std::to_string(s.bogoliubov_defect()));
  return s.variance_coefficient(phase);
}

}  // namespace phonon::numerics
