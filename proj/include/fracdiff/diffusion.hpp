#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/kernels.hpp"

namespace fracdiff::diffusion {

/// Initial profile phi(x) together with its exact Fourier transform
/// phi_hat(k) = int phi(x) e^{-ikx} dx.
struct InitialCondition {
  enum class Kind { Delta, Gaussian, Box };

  Kind kind = Kind::Gaussian;
  double width = 1.0;  // sigma0 for Gaussian, half-width for Box; unused for Delta

  static InitialCondition delta();
  static InitialCondition gaussian(double sigma0 = 1.0);
  static InitialCondition box(double halfwidth);

  void validate() const;

  double fourier(double k) const;
  /// phi(x); DomainError for the delta profile.
  double profile(double x) const;
  double mass() const { return fourier(0.0); }
  bool distributional() const { return kind == Kind::Delta; }
  bool twice_differentiable() const { return kind == Kind::Gaussian; }
  std::string describe() const;
};

std::string_view to_string(InitialCondition::Kind kind);
InitialCondition::Kind parse_ic_kind(std::string_view name);

/// Periodic spatial grid x_j = -L + j dx (dx = 2L/N) and its conjugate
/// wavenumbers k_m = m pi / L, m = -N/2 .. N/2-1, plus the diffusivity c_alpha.
struct Setup {
  double half_width = 40.0;
  std::size_t points = 4096;
  double c_alpha = 1.0;

  /// L > 0, c_alpha > 0, N a power of two >= 8.
  void validate() const;
  double dx() const { return 2.0 * half_width / static_cast<double>(points); }
  double dk() const;
  std::vector<double> x_grid() const;
  std::vector<double> k_grid() const;
};

inline constexpr double kBoundaryTolerance = 1e-8;
inline constexpr double kProfileEdgeTolerance = 1e-12;

struct SolutionField {
  std::vector<double> x_grid;
  std::vector<double> k_grid;  // ascending
  std::vector<double> times;
  std::vector<std::vector<std::complex<double>>> w_hat;  // [time][k]
  std::vector<std::vector<double>> w;                    // [time][x]
  double c_alpha = 1.0;
  double max_imag_residue = 0.0;  // largest |Im| dropped by the inverse transform

  /// Trapezoid mass of W(., times[i]) on the periodic grid.
  double mass(std::size_t time_index) const;
};

/// psi(s) / (s psi(s) + c^2 k^2), the Fourier-Laplace propagator; psi = 1 for alpha = 1.
std::complex<double> propagator_laplace(const kernels::KernelSpec& spec, double k, double c_alpha,
                                        std::complex<double> s);

/// W_hat(k, t) by Talbot inversion of phi_hat(k) psi / (s psi + c^2 k^2).
/// Throws InversionFailure carrying the offending k.
std::complex<double> solution_hat(const kernels::KernelSpec& spec, const InitialCondition& ic, double k,
                                  double t, double c_alpha = 1.0);

/// W(x, t) on the grid. Throws BoundaryDecayViolation if phi is not below
/// 1e-12 at x = +-L, or W exceeds 1e-8 at the grid edges.
SolutionField solve(const kernels::KernelSpec& spec, const InitialCondition& ic,
                    const std::vector<double>& times, const Setup& setup = {});

/// lim_{t->0+} W_hat(k, t) via the initial-value theorem on W_hat~(k, s).
double initial_profile_limit(const kernels::KernelSpec& spec, const InitialCondition& ic, double k,
                             double c_alpha = 1.0);

/// D(t) = max_x |W(x,t) - phi(x)|; for the delta profile max_k |W_hat(k,t) - 1|.
double deviation(const kernels::KernelSpec& spec, const InitialCondition& ic, double t, const Setup& setup = {});
std::vector<double> deviation_curve(const kernels::KernelSpec& spec, const InitialCondition& ic,
                                    const std::vector<double>& times, const Setup& setup = {});

/// Same norm evaluated on the closed-form t -> 0+ profile
/// phi_hat(k) / (1 + c^2 k^2 L), L = lim [s psi]^-1. Zero for admissible kernels;
/// for CF/AB this is the Lorentzian filter A/(A + c^2 k^2), A = M/(1-alpha).
double closed_form_limit_deviation(const kernels::KernelSpec& spec, const InitialCondition& ic,
                                   const Setup& setup = {});

struct InitialDeviationLimit {
  double extrapolated = 0.0;   // D(10^-j) over decade windows, extrapolated to t = 0
  double from_limit = 0.0;     // norm of phi_hat - initial_profile_limit over the grid
  bool agree = false;          // within 1e-4
};

inline constexpr double kLimitAgreement = 1e-4;

InitialDeviationLimit probe_initial_deviation(const kernels::KernelSpec& spec, const InitialCondition& ic,
                                              const Setup& setup = {});

struct TransformedSolution {
  SolutionField chi;            // chi = W - phi
  SolutionField reconstructed;  // chi + phi
};

/// Solves for chi = W - phi, which obeys the same equation with source
/// c^2 phi'' and zero initial value. Gaussian profiles only.
TransformedSolution solve_transformed(const kernels::KernelSpec& spec, const InitialCondition& ic,
                                      const std::vector<double>& times, const Setup& setup = {});

/// chi_hat(k, t) for a single wavenumber.
std::complex<double> transformed_hat(const kernels::KernelSpec& spec, const InitialCondition& ic, double k,
                                     double t, double c_alpha = 1.0);

/// lim_{t->0+} chi_hat(k, t) from the initial-value theorem; nonzero exactly
/// when the kernel cannot honour phi at wavenumber k.
double transformed_initial_limit(const kernels::KernelSpec& spec, const InitialCondition& ic, double k,
                                 double c_alpha = 1.0);

}  // namespace fracdiff::diffusion
