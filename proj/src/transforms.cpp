#include "fracdiff/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fracdiff/errors.hpp"

namespace fracdiff::transforms {
namespace {

using cplx = std::complex<double>;

cplx evaluate(const LaplaceFunction& f, cplx s) {
  cplx value;
  try {
    value = f(s);
  } catch (const Error& e) {
    throw InversionFailure(std::string("Laplace inversion: F(s) failed on the contour: ") + e.what(),
                           std::nan(""));
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw InversionFailure("Laplace inversion: F(s) not finite on the contour", std::nan(""));
  }
  return value;
}

double talbot(const LaplaceFunction& f, double t) {
  using std::numbers::pi;
  constexpr int m = kTalbotNodes;
  const double r = 2.0 * m / (5.0 * t);
  double sum = 0.5 * (evaluate(f, cplx(r, 0.0)) * std::exp(r * t)).real();
  for (int k = 1; k < m; ++k) {
    const double theta = k * pi / m;
    const double cot = 1.0 / std::tan(theta);
    const cplx s = r * theta * cplx(cot, 1.0);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    sum += (std::exp(t * s) * evaluate(f, s) * cplx(1.0, sigma)).real();
  }
  return r / m * sum;
}

std::array<double, kStehfestOrder> stehfest_weights() {
  constexpr int n = kStehfestOrder;
  constexpr int half = n / 2;
  auto fact = [](int k) { return std::tgamma(k + 1.0); };
  std::array<double, n> v{};
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += std::pow(j, half) * fact(2 * j) /
             (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    v[k - 1] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * sum;
  }
  return v;
}

double gaver_stehfest(const LaplaceFunction& f, double t) {
  static const auto weights = stehfest_weights();
  const double ln2_t = std::numbers::ln2 / t;
  double sum = 0.0;
  for (int k = 1; k <= kStehfestOrder; ++k) {
    sum += weights[k - 1] * evaluate(f, cplx(k * ln2_t, 0.0)).real();
  }
  return ln2_t * sum;
}

}  // namespace

double invert_laplace(const LaplaceFunction& f, double t, InversionMethod method) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("invert_laplace: t must be positive and finite");
  }
  const double value = method == InversionMethod::Talbot ? talbot(f, t) : gaver_stehfest(f, t);
  if (!std::isfinite(value)) {
    throw InversionFailure("invert_laplace: non-finite result", std::nan(""));
  }
  return value;
}

CheckedInversion invert_laplace_checked(const LaplaceFunction& f, double t) {
  CheckedInversion out;
  out.talbot = invert_laplace(f, t, InversionMethod::Talbot);
  out.stehfest = invert_laplace(f, t, InversionMethod::GaverStehfest);
  const double scale = std::max({std::abs(out.talbot), std::abs(out.stehfest), 1e-10});
  out.relative_gap = std::abs(out.talbot - out.stehfest) / scale;
  out.disagreement = out.relative_gap > 1e-4;
  return out;
}

}  // namespace fracdiff::transforms
