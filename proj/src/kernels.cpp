#include "fracdiff/kernels.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::kernels {
namespace {

using cplx = std::complex<double>;

void check_branch(cplx s, const char* who) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw DomainError(std::string(who) + ": non-finite Laplace variable");
  }
  if (s.imag() == 0.0 && s.real() <= 0.0) {
    throw BranchError(std::string(who) + ": s on the branch cut (real, <= 0)");
  }
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Caputo:
      return "caputo";
    case KernelKind::CaputoFabrizio:
      return "caputo-fabrizio";
    case KernelKind::AtanganaBaleanu:
      return "atangana-baleanu";
    case KernelKind::Prabhakar:
      return "prabhakar";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "caputo") return KernelKind::Caputo;
  if (name == "cf" || name == "caputo-fabrizio") return KernelKind::CaputoFabrizio;
  if (name == "ab" || name == "atangana-baleanu") return KernelKind::AtanganaBaleanu;
  if (name == "prabhakar") return KernelKind::Prabhakar;
  throw DomainError("unknown kernel kind '" + std::string(name) + "'");
}

KernelSpec KernelSpec::caputo(double alpha) {
  KernelSpec spec{KernelKind::Caputo, alpha};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::caputo_fabrizio(double alpha, double m_norm, double tau) {
  KernelSpec spec{KernelKind::CaputoFabrizio, alpha, tau, m_norm};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::atangana_baleanu(double alpha, double m_norm, double tau) {
  KernelSpec spec{KernelKind::AtanganaBaleanu, alpha, tau, m_norm};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::prabhakar(double alpha, double beta, double gamma_p, double lambda) {
  KernelSpec spec{KernelKind::Prabhakar, alpha};
  spec.beta = beta;
  spec.gamma_p = gamma_p;
  spec.lambda = lambda;
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("kernel: alpha must lie in (0, 1], got " + show(alpha));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("kernel: tau must be positive");
  }
  if (!(m_norm > 0.0) || !std::isfinite(m_norm)) {
    throw DomainError("kernel: normalization M must be positive");
  }
  if (kind == KernelKind::Prabhakar) {
    if (!std::isfinite(beta) || !std::isfinite(lambda)) {
      throw DomainError("kernel: Prabhakar beta and lambda must be finite");
    }
    if (!(gamma_p > 0.0) || !std::isfinite(gamma_p)) {
      throw DomainError("kernel: Prabhakar gamma must be positive");
    }
  }
}

double KernelSpec::kappa() const {
  if (classical()) {
    throw DomainError("kernel: kappa_alpha is undefined at alpha = 1");
  }
  return alpha / (1.0 - alpha);
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "(alpha=" << alpha;
  switch (kind) {
    case KernelKind::Caputo:
      break;
    case KernelKind::CaputoFabrizio:
    case KernelKind::AtanganaBaleanu:
      os << ", M=" << m_norm << ", tau=" << tau;
      break;
    case KernelKind::Prabhakar:
      os << ", beta=" << beta << ", gamma=" << gamma_p << ", lambda=" << lambda;
      break;
  }
  os << ")";
  return os.str();
}

double kernel_time(const KernelSpec& spec, double t) {
  spec.validate();
  if (!(t > 0.0)) {
    throw DomainError("kernel_time: t must be positive");
  }
  if (spec.classical()) {
    throw DistributionalKernel("kernel_time: alpha = 1 kernel is a delta distribution");
  }
  const double a = spec.alpha;
  switch (spec.kind) {
    case KernelKind::Caputo:
      return std::pow(t, -a) * specfun::rgamma(1.0 - a);
    case KernelKind::CaputoFabrizio:
      return spec.m_norm / (1.0 - a) * std::exp(-spec.kappa() * t / spec.tau);
    case KernelKind::AtanganaBaleanu: {
      const double z = -spec.kappa() * std::pow(t / spec.tau, a);
      return spec.m_norm / (1.0 - a) * specfun::mittag_leffler({a, 1.0, 1.0}, z);
    }
    case KernelKind::Prabhakar: {
      const double z = spec.lambda * std::pow(t, a);
      const double ml = specfun::mittag_leffler({a, spec.beta, spec.gamma_p}, z);
      return std::pow(t, spec.beta - 1.0) * ml / (1.0 - a);
    }
  }
  return 0.0;
}

std::complex<double> kernel_laplace(const KernelSpec& spec, std::complex<double> s) {
  spec.validate();
  check_branch(s, "kernel_laplace");
  const double a = spec.alpha;
  switch (spec.kind) {
    case KernelKind::Caputo:
      return spec.classical() ? cplx(1.0) : std::pow(s, a - 1.0);
    case KernelKind::CaputoFabrizio:
      return spec.m_norm / ((1.0 - a) * s + a / spec.tau);
    case KernelKind::AtanganaBaleanu:
      return spec.m_norm / s / ((1.0 - a) + a * std::pow(s * spec.tau, -a));
    case KernelKind::Prabhakar: {
      if (spec.classical()) {
        throw DomainError("kernel_laplace: Prabhakar prefactor 1/(1 - alpha) is singular at alpha = 1");
      }
      const cplx s_a = std::pow(s, a);
      const cplx den = s_a - spec.lambda;
      if (std::abs(den) <= 1e-14 * std::abs(s_a)) {
        throw PoleError("kernel_laplace: Prabhakar pole s^alpha = lambda");
      }
      const cplx den_pow = spec.gamma_p == 1.0 ? den : std::pow(den, spec.gamma_p);
      return std::pow(s, a * spec.gamma_p - spec.beta) / den_pow / (1.0 - a);
    }
  }
  return 0.0;
}

double GelfandShilov::operator()(double t) const {
  if (!(nu > 0.0)) {
    throw DistributionalKernel("GelfandShilov: G_nu with nu <= 0 has no pointwise values");
  }
  if (t <= 0.0) {
    return 0.0;
  }
  return std::pow(t, nu - 1.0) * specfun::rgamma(nu);
}

std::complex<double> gelfand_shilov_laplace(const GelfandShilov& g, std::complex<double> s) {
  check_branch(s, "gelfand_shilov_laplace");
  if (g.nu == 0.0) {
    return 1.0;
  }
  return std::pow(s, -g.nu);
}

double convolve_gs(double mu, double nu, double t) {
  if (!(mu > 0.0) || !(nu > 0.0) || !(t > 0.0)) {
    throw DomainError("convolve_gs: mu, nu and t must be positive");
  }
  const double scale = specfun::rgamma(mu) * specfun::rgamma(nu);
  // xc is the signed distance to the nearer endpoint; using it keeps t - tau
  // exact where G_nu is singular.
  auto integrand = [&](double x, double xc) {
    const double left = x;
    const double right = x > 0.5 * t ? std::abs(xc) : t - x;
    if (left <= 0.0 || right <= 0.0) {
      return 0.0;
    }
    return scale * std::pow(left, mu - 1.0) * std::pow(right, nu - 1.0);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0, t, 1e-13, &error, &l1);
  if (!std::isfinite(value) || error > 1e-8 * std::max(1.0, std::abs(value))) {
    throw QuadratureFailure("convolve_gs: quadrature error estimate " + show(error) +
                            " exceeds 1e-8");
  }
  return value;
}

}  // namespace fracdiff::kernels
