#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracdiff/errors.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::specfun {
namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

constexpr double kSeriesRadius = 1.0;
constexpr int kMaxSeriesTerms = 10000;
// Relative accuracy the dispatcher has to certify.
constexpr double kCertified = 1e-10;
// Nodes per half contour; beyond this the accuracy target is relaxed.
constexpr double kMaxContourNodes = 1000.0;
// Per-term rounding of a series term computed through exp/lgamma.
constexpr double kTermRounding = 64.0 * DBL_EPSILON;

// A value with an a-posteriori estimate of its absolute error.
struct Evaluation {
  cplx value;
  double error;
};

double compensation(double a, double b, double sum) {
  return std::abs(a) >= std::abs(b) ? (a - sum) + b : (b - sum) + a;
}

Evaluation series_impl(const MLParams& p, cplx z) {
  const bool use_logs = std::abs(z) > 1.0;
  const cplx log_z = use_logs ? std::log(z) : cplx{};
  cplx sum = 0.0;
  cplx carry = 0.0;  // Neumaier compensation, per component
  cplx z_pow = 1.0;
  double rising = 1.0;  // (gamma)_k / k!
  int quiet_terms = 0;
  double abs_sum = 0.0;

  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const double x = p.alpha * k + p.beta;
    cplx term;
    if (use_logs && x > 0.0) {
      term = rising * std::exp(static_cast<double>(k) * log_z - std::lgamma(x));
    } else {
      term = rising * z_pow * rgamma(x);
    }
    const cplx next = sum + term;
    carry += cplx(compensation(sum.real(), term.real(), next.real()),
                  compensation(sum.imag(), term.imag(), next.imag()));
    sum = next;
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
      throw NonConvergence("Mittag-Leffler series overflow");
    }
    abs_sum += std::abs(term);
    // Two consecutive negligible terms: a single one can be an exact zero of 1/Gamma.
    if (std::abs(term) <= 1e-16 * std::abs(sum)) {
      if (++quiet_terms >= 2) {
        return {sum + carry, kTermRounding * abs_sum};
      }
    } else {
      quiet_terms = 0;
    }
    rising *= (p.gamma_p + k) / (k + 1.0);
    if (!use_logs) {
      z_pow *= z;
    }
  }
  throw NonConvergence("Mittag-Leffler series did not converge within 10000 terms");
}

// alpha = 1 only: E^g_{1,b}(z) = 1F1(g; b; z) / Gamma(b) = e^z 1F1(b - g; b; -z) / Gamma(b).
// For Re z < 0 the transformed series has little cancellation, and it
// terminates when b - g is a non-positive integer (e^z, (1 + z) e^z, ...).
Evaluation kummer_impl(const MLParams& p, cplx z) {
  const cplx w = -z;
  // b - g as a + a_low exactly: a factor a + k near zero is amplified by up to e^|z|.
  const double a = p.beta - p.gamma_p;
  const double v = a - p.beta;
  const double a_low = (p.beta - (a - v)) + (-p.gamma_p - v);
  cplx sum = 0.0;
  cplx carry = 0.0;
  cplx term = 1.0;  // (b - g)_k w^k / ((b)_k k!)
  double drift = 0.0;  // accumulated relative error of term
  double error = 0.0;
  int quiet_terms = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const cplx next = sum + term;
    carry += cplx(compensation(sum.real(), term.real(), next.real()),
                  compensation(sum.imag(), term.imag(), next.imag()));
    sum = next;
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
      throw NonConvergence("Mittag-Leffler Kummer series overflow");
    }
    error += std::abs(term) * (drift + kTermRounding);
    if (term == 0.0 || std::abs(term) <= 1e-16 * std::abs(sum)) {
      if (term == 0.0 || ++quiet_terms >= 2) {
        const cplx scale = std::exp(z) * rgamma(p.beta);
        return {(sum + carry) * scale, error * std::abs(scale)};
      }
    } else {
      quiet_terms = 0;
    }
    const double shifted = a + k;
    const double num = shifted + a_low;
    if (num == 0.0) {
      term = 0.0;
      continue;
    }
    drift += DBL_EPSILON * (std::abs(shifted) + std::abs(num)) / std::abs(num) + 4.0 * DBL_EPSILON;
    term *= num / ((p.beta + k) * (k + 1.0)) * w;
  }
  throw NonConvergence("Mittag-Leffler Kummer series did not converge within 10000 terms");
}

struct ContourParams {
  double mu = 0.0;
  double h = 0.0;
  double n = std::numeric_limits<double>::infinity();
};

const double kLogEps = std::log(DBL_EPSILON);

// Parameters of a parabolic contour lying in the strip between two
// singularities with phi values phi_j < phi_j1 and strengths p_j, q_j.
ContourParams optimal_bounded(double t, double phi_j, double phi_j1, double p_j, double q_j,
                              double log_epsilon) {
  constexpr double fac = 1.01;
  const double f_max = std::exp(log_epsilon - kLogEps);
  const double sq_phi_j = std::sqrt(phi_j);
  const double threshold = 2.0 * std::sqrt((log_epsilon - kLogEps) / t);
  const double sq_phi_j1 = std::min(std::sqrt(phi_j1), threshold - sq_phi_j);

  double sq_bar_j = sq_phi_j;
  double sq_bar_j1 = sq_phi_j1;
  double f_bar = 1.0;
  bool admissible = false;

  if (p_j < 1e-14 && q_j < 1e-14) {
    admissible = true;
  } else if (p_j < 1e-14) {
    const double f_min = sq_phi_j > 0.0 ? fac * std::pow(sq_phi_j / (sq_phi_j1 - sq_phi_j), q_j) : fac;
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fq = std::pow(f_bar, -1.0 / q_j);
      sq_bar_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq);
      admissible = true;
    }
  } else if (q_j < 1e-14) {
    const double f_min = fac * std::pow(sq_phi_j1 / (sq_phi_j1 - sq_phi_j), p_j);
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / p_j);
      sq_bar_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp);
      admissible = true;
    }
  } else {
    double f_min = fac * (sq_phi_j + sq_phi_j1) / std::pow(sq_phi_j1 - sq_phi_j, std::max(p_j, q_j));
    if (f_min < f_max) {
      f_min = std::max(f_min, 1.5);
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / p_j);
      const double fq = std::pow(f_bar, -1.0 / q_j);
      const double w = -phi_j1 * t / log_epsilon;
      const double den = 2.0 + w - (1.0 + w) * fp + fq;
      sq_bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
      sq_bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
      admissible = true;
    }
  }
  if (!admissible) {
    return {};
  }

  const double log_eps_target = log_epsilon - std::log(f_bar);
  const double w = -sq_bar_j1 * sq_bar_j1 * t / log_eps_target;
  ContourParams out;
  out.mu = std::pow(((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w), 2);
  out.h = -2.0 * pi / log_eps_target * (sq_bar_j1 - sq_bar_j) / ((1.0 + w) * sq_bar_j + sq_bar_j1);
  out.n = std::ceil(std::sqrt(1.0 - log_eps_target / t / out.mu) / out.h);
  return out;
}

// Parameters of a parabolic contour to the right of every singularity.
ContourParams optimal_unbounded(double t, double phi_j, double p_j, double log_epsilon) {
  const double sq_phi_j = std::sqrt(phi_j);
  double phi_bar = phi_j > 0.0 ? phi_j * 1.01 : 0.01;
  double sq_phi_bar = std::sqrt(phi_bar);

  constexpr double f_min = 1.0;
  constexpr double f_max = 10.0;
  constexpr double f_tar = 5.0;

  double n = 0.0;
  double a = 0.0;
  double sq_mu = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double phi_t = phi_bar * t;
    const double log_eps_phi_t = log_epsilon / phi_t;
    n = std::ceil(phi_t / pi * (1.0 - 1.5 * log_eps_phi_t + std::sqrt(1.0 - 2.0 * log_eps_phi_t)));
    a = pi * n / phi_t;
    sq_mu = sq_phi_bar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
    const double f_bar = std::pow((sq_phi_bar - sq_phi_j) / sq_mu, -p_j);
    if (p_j < 1e-14 || (f_min < f_bar && f_bar < f_max)) {
      break;
    }
    sq_phi_bar = std::pow(f_tar, -1.0 / p_j) * sq_mu + sq_phi_j;
    phi_bar = sq_phi_bar * sq_phi_bar;
  }

  ContourParams out;
  out.mu = sq_mu * sq_mu;
  out.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n;
  out.n = n;

  // Keep round-off under control when the contour would sit too far right.
  const double threshold = (log_epsilon - kLogEps) / t;
  if (out.mu > threshold) {
    const double q = std::abs(p_j) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / p_j) * std::sqrt(out.mu);
    phi_bar = std::pow(q + sq_phi_j, 2);
    if (phi_bar < threshold) {
      const double w = std::sqrt(kLogEps / (kLogEps - log_epsilon));
      const double u = std::sqrt(-phi_bar * t / kLogEps);
      out.mu = threshold;
      out.n = std::ceil(w * log_epsilon / 2.0 / pi / (u * w - 1.0));
      out.h = std::sqrt(kLogEps / (kLogEps - log_epsilon)) / out.n;
    } else {
      out = {};
    }
  }
  return out;
}

// Contour hugging the rightmost singularity (parabola parameter phi_max).
// Round-off grows like e^mu, so mu stays as close to phi_max as the node
// budget allows: a singularity on the parabola of parameter phi sits at
// distance 1 - sqrt(phi/mu) from the real u axis.
ContourParams tight_unbounded(double t, double phi_max, double log_epsilon) {
  constexpr double max_nodes = 1000.0;
  ContourParams out;
  for (double delta : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    const double mu = phi_max * (1.0 + delta);
    const double d = 1.0 - 1.0 / std::sqrt(1.0 + delta);
    const double h = -2.0 * pi * d / log_epsilon;
    const double n = std::ceil(std::sqrt(1.0 - log_epsilon / (mu * t)) / h);
    if (n <= max_nodes) {
      return {mu, h, n};
    }
  }
  return out;
}

Evaluation contour_impl(const MLParams& p, cplx z) {
  if (std::abs(z) < 1e-15) {
    return {rgamma(p.beta), 0.0};
  }
  constexpr double t = 1.0;
  double log_epsilon = std::log(1e-15);

  // Poles s^alpha = z of the Laplace transform on the principal sheet.
  const double theta = std::arg(z);
  const int k_min = static_cast<int>(std::ceil(-p.alpha / 2.0 - theta / (2.0 * pi)));
  const int k_max = static_cast<int>(std::floor(p.alpha / 2.0 - theta / (2.0 * pi)));
  struct Singularity {
    cplx s;
    double phi;
  };
  std::vector<Singularity> poles;
  for (int k = k_min; k <= k_max; ++k) {
    const cplx s = std::pow(std::abs(z), 1.0 / p.alpha) *
                   std::exp(cplx(0.0, (theta + 2.0 * pi * k) / p.alpha));
    const double phi = (s.real() + std::abs(s)) / 2.0;
    if (phi > 1e-15) {
      poles.push_back({s, phi});
    }
  }
  std::sort(poles.begin(), poles.end(),
            [](const Singularity& a, const Singularity& b) { return a.phi < b.phi; });

  // Index 0 is the branch point at the origin.
  std::vector<Singularity> sing{{cplx{0.0}, 0.0}};
  sing.insert(sing.end(), poles.begin(), poles.end());
  const std::size_t n_sing = sing.size();

  std::vector<double> phi(n_sing + 1);
  std::vector<double> strength_left(n_sing);
  std::vector<double> strength_right(n_sing);
  for (std::size_t j = 0; j < n_sing; ++j) {
    phi[j] = sing[j].phi;
    strength_left[j] = j == 0 ? std::max(0.0, -2.0 * (p.alpha * p.gamma_p - p.beta + 1.0)) : p.gamma_p;
    strength_right[j] = j + 1 < n_sing ? p.gamma_p : std::numeric_limits<double>::infinity();
  }
  phi[n_sing] = std::numeric_limits<double>::infinity();

  // Regions j: contour between singularity j and j+1. Poles right of the
  // contour are added back as residues, which only exist as simple poles
  // when gamma_p = 1.
  std::vector<std::size_t> regions;
  for (std::size_t j = 0; j < n_sing; ++j) {
    const bool roundoff_ok = phi[j] < (log_epsilon - kLogEps) / t;
    const bool ordered = phi[j] < phi[j + 1];
    const bool residues_ok = p.gamma_p == 1.0 || j + 1 == n_sing;
    if (roundoff_ok && ordered && residues_ok) {
      regions.push_back(j);
    }
  }
  // Branch points far to the right (gamma_p != 1): the last region is the
  // only option, whatever it costs in round-off.
  const bool relaxed = regions.empty();
  if (relaxed) {
    regions.push_back(n_sing - 1);
  }

  std::vector<ContourParams> params(n_sing);
  std::size_t best = regions.front();
  if (relaxed) {
    params[best] = tight_unbounded(t, phi[best], log_epsilon);
  }
  while (!relaxed) {
    for (std::size_t j : regions) {
      params[j] = j + 1 < n_sing
                      ? optimal_bounded(t, phi[j], phi[j + 1], strength_left[j], strength_right[j], log_epsilon)
                      : optimal_unbounded(t, phi[j], strength_left[j], log_epsilon);
    }
    best = *std::min_element(regions.begin(), regions.end(),
                             [&](std::size_t a, std::size_t b) { return params[a].n < params[b].n; });
    if (params[best].n <= kMaxContourNodes) {
      break;
    }
    log_epsilon += std::log(10.0);
    if (log_epsilon > std::log(1e-8)) {
      throw NonConvergence("Mittag-Leffler contour: accuracy target cannot be met");
    }
  }

  const auto [mu, h, n_nodes] = params[best];
  if (!std::isfinite(n_nodes)) {
    throw NonConvergence("Mittag-Leffler contour: no admissible integration region");
  }
  const double exponent = p.alpha * p.gamma_p - p.beta;
  // Integrand at u; cond gets its relative rounding error in units of eps.
  auto integrand = [&, mu = mu](double u, double* cond = nullptr) {
    const cplx s = mu * std::pow(cplx(1.0, u), 2);
    const cplx ds = cplx(-2.0 * mu * u, 2.0 * mu);
    const cplx s_alpha = std::pow(s, p.alpha);
    const cplx gap = s_alpha - z;
    cplx f = std::pow(s, exponent) * ds;
    f /= p.gamma_p == 1.0 ? gap : std::pow(gap, p.gamma_p);
    if (cond) {
      *cond = 4.0 + std::abs(s) * t + std::abs(exponent * std::log(s)) +
              std::abs(p.gamma_p) * (std::abs(s_alpha) + std::abs(z)) / std::abs(gap);
    }
    return std::exp(s * t) * f;
  };
  // Trapezoid sum on the parabola s = mu (1 + iu)^2 with step step over
  // |u| <= extent. error gets rounding plus a geometric bound on the cut tails.
  auto trapezoid = [&](double step, double extent, double& error) {
    const int n = static_cast<int>(std::ceil(extent / step));
    cplx sum = 0.0;
    double sum_sq = 0.0;
    for (int k = -n; k <= n; ++k) {
      double cond = 0.0;
      const cplx term = integrand(step * k, &cond);
      sum += term;
      sum_sq += std::norm(cond * term);
    }
    double tail = 0.0;
    for (double sign : {-1.0, 1.0}) {
      const double last = std::abs(integrand(sign * step * n));
      const double beyond = std::abs(integrand(sign * step * (n + 1)));
      const double ratio = last > 0.0 ? beyond / last : 0.0;
      tail += ratio < 1.0 ? beyond / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    }
    error = (DBL_EPSILON * std::sqrt(sum_sq) + tail) * step / (2.0 * pi);
    return sum * step / (2.0 * pi * cplx(0.0, 1.0));
  };

  cplx residues = 0.0;
  double residue_rounding = 0.0;
  for (std::size_t j = best + 1; j < n_sing; ++j) {
    const cplx s = sing[j].s;
    const cplx r = std::pow(s, 1.0 - p.beta) * std::exp(t * s) / p.alpha;
    residues += r;
    residue_rounding += 4.0 * DBL_EPSILON * std::abs(r);
  }

  // The same contour with a 20% finer step; the change bounds the
  // discretisation error of the finer sum.
  const double extent = h * n_nodes;
  double rounding_coarse = 0.0;
  double rounding_fine = 0.0;
  const cplx coarse = trapezoid(h, extent, rounding_coarse);
  const cplx fine = trapezoid(0.8 * h, extent, rounding_fine);
  return {fine + residues, std::abs(fine - coarse) + rounding_fine + residue_rounding};
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

std::complex<double> ml_series(const MLParams& p, std::complex<double> z) {
  p.validate();
  return series_impl(p, z).value;
}

std::complex<double> ml_contour(const MLParams& p, std::complex<double> z) {
  p.validate();
  return contour_impl(p, z).value;
}

std::complex<double> mittag_leffler(const MLParams& p, std::complex<double> z) {
  p.validate();
  if (!finite(z)) {
    throw DomainError("Mittag-Leffler: argument must be finite");
  }
  if (std::abs(z) < 1e-15) {
    return rgamma(p.beta);
  }
  if (std::abs(z) <= kSeriesRadius) {
    return series_impl(p, z).value;
  }

  Evaluation best{cplx(std::numeric_limits<double>::quiet_NaN()), std::numeric_limits<double>::infinity()};
  auto consider = [&best](const Evaluation& e) {
    if (finite(e.value) && e.error < best.error) {
      best = e;
    }
  };
  if (p.alpha == 1.0 && z.real() < 0.0) {
    try {
      consider(kummer_impl(p, z));
    } catch (const NonConvergence&) {
    }
  }
  if (!(best.error <= kCertified * std::abs(best.value))) {
    try {
      consider(contour_impl(p, z));
    } catch (const NonConvergence&) {
    }
  }
  // The series is only a fallback: its estimate is sharper, its value is not.
  if (!(best.error <= kCertified * std::abs(best.value))) {
    try {
      consider(series_impl(p, z));
    } catch (const NonConvergence&) {
    }
  }
  if (!(best.error <= kCertified * std::abs(best.value))) {
    throw NonConvergence("Mittag-Leffler: cannot certify relative accuracy 1e-10 at z = (" + show(z.real()) + ", " +
                         show(z.imag()) + ")");
  }
  return best.value;
}

double mittag_leffler(const MLParams& p, double x) { return mittag_leffler(p, cplx(x, 0.0)).real(); }

}  // namespace fracdiff::specfun
