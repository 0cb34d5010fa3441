#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace fracdiff::kernels {

enum class KernelKind { Caputo, CaputoFabrizio, AtanganaBaleanu, Prabhakar };

std::string_view to_string(KernelKind kind);
/// Accepts "caputo", "cf"/"caputo-fabrizio", "ab"/"atangana-baleanu", "prabhakar".
KernelKind parse_kernel_kind(std::string_view name);

/// A fractional-derivative kernel Psi(t, alpha) in D^alpha f = Psi * f'.
///
/// m_norm and tau only enter the CF and AB kernels. beta, gamma_p and lambda
/// only enter the Prabhakar kernel, which keeps the bare 1/(1 - alpha)
/// prefactor. alpha = 1 is the classical first derivative: the kernel is a
/// delta distribution and solvers substitute psi(s) = 1.
struct KernelSpec {
  KernelKind kind = KernelKind::Caputo;
  double alpha = 0.5;
  double tau = 1.0;
  double m_norm = 1.0;
  double beta = 1.0;
  double gamma_p = 1.0;
  double lambda = 0.0;

  static KernelSpec caputo(double alpha);
  static KernelSpec caputo_fabrizio(double alpha, double m_norm = 1.0, double tau = 1.0);
  static KernelSpec atangana_baleanu(double alpha, double m_norm = 1.0, double tau = 1.0);
  static KernelSpec prabhakar(double alpha, double beta, double gamma_p, double lambda);

  /// Throws DomainError on 0 < alpha <= 1, tau > 0, m_norm > 0, gamma_p > 0 violations.
  void validate() const;

  bool classical() const { return alpha == 1.0; }

  /// alpha / (1 - alpha); DomainError for alpha = 1.
  double kappa() const;

  std::string describe() const;
};

/// Psi(t, alpha) for t > 0.
double kernel_time(const KernelSpec& spec, double t);

/// psi(s, alpha), the Laplace transform of the kernel, continued analytically
/// through its closed form (principal branch). Throws BranchError on the cut
/// s <= 0 and PoleError where the Prabhakar denominator vanishes.
std::complex<double> kernel_laplace(const KernelSpec& spec, std::complex<double> s);

/// Gelfand-Shilov distribution G_nu(t) = t^{nu-1} H(t) / Gamma(nu).
struct GelfandShilov {
  double nu = 1.0;

  /// Pointwise value; defined for nu > 0 only (nu <= 0 is a distribution).
  double operator()(double t) const;
};

/// s^{-nu}, principal branch.
std::complex<double> gelfand_shilov_laplace(const GelfandShilov& g, std::complex<double> s);

/// (G_mu * G_nu)(t) by endpoint-singularity-aware quadrature. Throws
/// QuadratureFailure when the error estimate exceeds 1e-8.
double convolve_gs(double mu, double nu, double t);

}  // namespace fracdiff::kernels
