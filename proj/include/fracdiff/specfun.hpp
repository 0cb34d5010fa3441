#pragma once

#include <complex>

namespace fracdiff::specfun {

/// Gamma function. Throws PoleError at non-positive integers.
double gamma_fn(double x);
std::complex<double> gamma_fn(std::complex<double> z);

/// 1/Gamma(x), entire; exactly zero at the poles of Gamma.
double rgamma(double x);

/// Parameters of the Prabhakar function E^gamma_{alpha,beta}.
/// beta = gamma_p = 1 gives the classical Mittag-Leffler function E_alpha.
struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma_p = 1.0;

  /// Throws DomainError unless alpha > 0 and gamma_p > 0 (both finite).
  void validate() const;
};

/// E^gamma_{alpha,beta}(z) = sum_k (gamma)_k z^k / (k! Gamma(alpha k + beta)).
///
/// Small |z| is summed directly; otherwise the function is obtained by
/// inverting its Laplace transform s^{alpha gamma - beta} / (s^alpha - z)^gamma
/// on an optimal parabolic contour, with residues of the poles left of the
/// contour added back when gamma_p = 1. At alpha = 1 with Re z < 0 the
/// Kummer-transformed series e^z 1F1(beta - gamma; beta; -z) / Gamma(beta)
/// is tried first. Each regime carries an error estimate; NonConvergence is
/// thrown unless one of them certifies a relative error of 1e-10. In
/// practice that happens for gamma_p != 1 with z far off the real axis: the
/// contour has to pass right of z^{1/alpha} and cancels heavily.
std::complex<double> mittag_leffler(const MLParams& p, std::complex<double> z);
double mittag_leffler(const MLParams& p, double x);

// The two evaluation regimes, exposed so they can be compared where both apply.

/// Power series with term-ratio stopping (next term below 1e-16 of the sum,
/// at most 10000 terms). Throws NonConvergence on hitting the cap.
std::complex<double> ml_series(const MLParams& p, std::complex<double> z);

/// Parabolic-contour inversion. For gamma_p != 1 the contour has to pass
/// right of every branch point; NonConvergence if that needs too many nodes.
std::complex<double> ml_contour(const MLParams& p, std::complex<double> z);

}  // namespace fracdiff::specfun
