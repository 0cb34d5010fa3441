#include "fracdiff/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracdiff/errors.hpp"

namespace fracdiff::specfun {
namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 0.5.
std::complex<double> lanczos_log_gamma(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> sum = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    sum += kLanczosCoef[i] / (z + static_cast<double>(i));
  }
  const std::complex<double> t = z + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) {
    throw DomainError("gamma_fn: NaN argument");
  }
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma_fn: pole at non-positive integer " + show(x));
  }
  return std::tgamma(x);
}

std::complex<double> gamma_fn(std::complex<double> z) {
  if (z.imag() == 0.0) {
    return gamma_fn(z.real());
  }
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    using std::numbers::pi;
    return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
  }
  return std::exp(lanczos_log_gamma(z));
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) {
    return 0.0;
  }
  if (x > 171.0) {
    return std::exp(-std::lgamma(x));
  }
  return 1.0 / std::tgamma(x);
}

void MLParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Mittag-Leffler: alpha must be positive, got " + show(alpha));
  }
  if (!std::isfinite(beta)) {
    throw DomainError("Mittag-Leffler: beta must be finite");
  }
  if (!(gamma_p > 0.0) || !std::isfinite(gamma_p)) {
    throw DomainError("Mittag-Leffler: gamma must be positive, got " + show(gamma_p));
  }
}

}  // namespace fracdiff::specfun
