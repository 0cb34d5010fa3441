#include "fracdiff/diffusion.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <span>

#include "fracdiff/admissibility.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/transforms.hpp"

namespace fracdiff::diffusion {
namespace {

using cplx = std::complex<double>;
using kernels::KernelSpec;
using std::numbers::pi;

constexpr int kDeepestWindowStart = 57;

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Maps ascending-k spectra to W(x_j) = (1/2pi) sum_m dk W_hat(k_m) e^{i k_m x_j}.
class InverseFourier {
 public:
  explicit InverseFourier(std::size_t n) : n_(n), buf_(fftw_alloc_complex(n)) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~InverseFourier() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
  }
  InverseFourier(const InverseFourier&) = delete;
  InverseFourier& operator=(const InverseFourier&) = delete;

  std::vector<double> apply(std::span<const cplx> w_hat, double dk, double& imag_residue) {
    const std::size_t half = n_ / 2;
    for (std::size_t i = 0; i < n_; ++i) {
      // Sorted index i holds m = i - N/2; e^{i k_m x_j} = (-1)^m e^{2 pi i m j / N}.
      const std::size_t q = (i + half) % n_;
      const double sign = ((i + half) % 2 == 0) ? 1.0 : -1.0;
      buf_[q][0] = sign * w_hat[i].real();
      buf_[q][1] = sign * w_hat[i].imag();
    }
    fftw_execute(plan_);
    const double scale = dk / (2.0 * pi);
    std::vector<double> out(n_);
    imag_residue = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      out[j] = scale * buf_[j][0];
      imag_residue = std::max(imag_residue, std::abs(scale * buf_[j][1]));
    }
    return out;
  }

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan plan_ = nullptr;
};

void check_times(const std::vector<double>& times) {
  if (times.empty()) {
    throw DomainError("diffusion: at least one output time is required");
  }
  for (double t : times) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw DomainError("diffusion: output times must be positive and finite");
    }
  }
}

void check_profile_edges(const InitialCondition& ic, const Setup& setup) {
  if (ic.distributional()) {
    return;
  }
  const double edge = std::max(std::abs(ic.profile(-setup.half_width)), std::abs(ic.profile(setup.half_width)));
  if (!(edge < kProfileEdgeTolerance)) {
    throw BoundaryDecayViolation("diffusion: initial profile is " + show(edge) +
                                 " at x = +-L; enlarge the half-width L");
  }
}

void check_solution_edges(const std::vector<double>& w, double t) {
  const double edge = std::max(std::abs(w.front()), std::abs(w.back()));
  if (!(edge < kBoundaryTolerance)) {
    throw BoundaryDecayViolation("diffusion: |W| = " + show(edge) + " at the grid edge for t = " +
                                 show(t) + " exceeds 1e-8 (under-resolved: raise N or L, or use a later t)");
  }
}

double inverse_laplace_at(const transforms::LaplaceFunction& f, double t, double k) {
  try {
    return transforms::invert_laplace(f, t);
  } catch (const InversionFailure& e) {
    throw InversionFailure(std::string(e.what()) + " (k = " + show(k) + ")", k);
  } catch (const Error& e) {
    throw InversionFailure(std::string(e.what()) + " (k = " + show(k) + ")", k);
  }
}

// Initial-value limit with the sampling window pushed to larger s until the
// estimate settles. Large c^2 k^2 delays the asymptotic regime, and before it
// is reached s F(s) can still be climbing, so growth is not taken as final.
double ivt_limit(const transforms::LaplaceFunction& f, double k) {
  constexpr std::array<double, 6> starts = {1e2, 1e9, 1e16, 1e30, 1e60, 1e120};
  transforms::LimitEstimate est;
  for (double s0 : starts) {
    transforms::LimitOptions options;
    options.s0 = s0;
    est = transforms::initial_value_limit(f, options);
    if (est.converged) {
      return est.value;
    }
  }
  throw NonConvergence("initial-value limit did not converge at k = " + show(k) + " (" +
                       std::string(transforms::to_string(est.status)) + ")");
}

// Computes f(|k|) for every k on the ascending grid, using evenness in k.
template <typename Fn>
std::vector<cplx> even_spectrum(const std::vector<double>& k_grid, Fn&& fn) {
  const std::size_t n = k_grid.size();
  const std::size_t half = n / 2;
  std::vector<cplx> out(n);
  for (std::size_t i = half; i < n; ++i) {
    out[i] = fn(k_grid[i]);
  }
  out[0] = fn(std::abs(k_grid[0]));
  for (std::size_t i = 1; i < half; ++i) {
    out[i] = out[n - i];
  }
  return out;
}

// max_x |IFFT(w_hat) - phi| or, for the delta profile, max_k |w_hat - 1|.
double deviation_norm(const InitialCondition& ic, const Setup& setup, const std::vector<double>& k_grid,
                      std::span<const cplx> w_hat, InverseFourier& ift) {
  double d = 0.0;
  if (ic.distributional()) {
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
      d = std::max(d, std::abs(w_hat[i] - ic.fourier(k_grid[i])));
    }
    return d;
  }
  double residue = 0.0;
  const std::vector<double> w = ift.apply(w_hat, setup.dk(), residue);
  const std::vector<double> x = setup.x_grid();
  for (std::size_t j = 0; j < w.size(); ++j) {
    d = std::max(d, std::abs(w[j] - ic.profile(x[j])));
  }
  return d;
}

void validate_all(const KernelSpec& spec, const InitialCondition& ic, const Setup& setup) {
  spec.validate();
  ic.validate();
  setup.validate();
}

}  // namespace

// ---------------------------------------------------------------------------

InitialCondition InitialCondition::delta() { return {Kind::Delta, 0.0}; }

InitialCondition InitialCondition::gaussian(double sigma0) {
  InitialCondition ic{Kind::Gaussian, sigma0};
  ic.validate();
  return ic;
}

InitialCondition InitialCondition::box(double halfwidth) {
  InitialCondition ic{Kind::Box, halfwidth};
  ic.validate();
  return ic;
}

void InitialCondition::validate() const {
  if (kind != Kind::Delta && (!(width > 0.0) || !std::isfinite(width))) {
    throw DomainError("initial condition: width must be positive");
  }
}

double InitialCondition::fourier(double k) const {
  switch (kind) {
    case Kind::Delta:
      return 1.0;
    case Kind::Gaussian:
      return std::exp(-0.5 * width * width * k * k);
    case Kind::Box:
      return k == 0.0 ? 2.0 * width : 2.0 * std::sin(k * width) / k;
  }
  return 0.0;
}

double InitialCondition::profile(double x) const {
  switch (kind) {
    case Kind::Delta:
      throw DomainError("initial condition: the delta profile has no pointwise values");
    case Kind::Gaussian:
      return std::exp(-0.5 * x * x / (width * width)) / (width * std::sqrt(2.0 * pi));
    case Kind::Box: {
      const double ax = std::abs(x);
      return ax < width ? 1.0 : (ax == width ? 0.5 : 0.0);
    }
  }
  return 0.0;
}

std::string InitialCondition::describe() const {
  switch (kind) {
    case Kind::Delta:
      return "delta";
    case Kind::Gaussian:
      return "gaussian(sigma0=" + show(width) + ")";
    case Kind::Box:
      return "box(halfwidth=" + show(width) + ")";
  }
  return "unknown";
}

std::string_view to_string(InitialCondition::Kind kind) {
  switch (kind) {
    case InitialCondition::Kind::Delta:
      return "delta";
    case InitialCondition::Kind::Gaussian:
      return "gaussian";
    case InitialCondition::Kind::Box:
      return "box";
  }
  return "unknown";
}

InitialCondition::Kind parse_ic_kind(std::string_view name) {
  if (name == "delta") return InitialCondition::Kind::Delta;
  if (name == "gaussian") return InitialCondition::Kind::Gaussian;
  if (name == "box") return InitialCondition::Kind::Box;
  throw DomainError("unknown initial condition '" + std::string(name) + "'");
}

void Setup::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("grid: half-width L must be positive");
  }
  if (points < 8 || (points & (points - 1)) != 0) {
    throw DomainError("grid: N must be a power of two >= 8, got " + std::to_string(points));
  }
  if (!(c_alpha > 0.0) || !std::isfinite(c_alpha)) {
    throw DomainError("grid: c_alpha must be positive");
  }
}

double Setup::dk() const { return pi / half_width; }

std::vector<double> Setup::x_grid() const {
  std::vector<double> x(points);
  const double h = dx();
  for (std::size_t j = 0; j < points; ++j) {
    x[j] = -half_width + static_cast<double>(j) * h;
  }
  return x;
}

std::vector<double> Setup::k_grid() const {
  std::vector<double> k(points);
  const double h = dk();
  const auto half = static_cast<std::ptrdiff_t>(points / 2);
  for (std::size_t i = 0; i < points; ++i) {
    k[i] = static_cast<double>(static_cast<std::ptrdiff_t>(i) - half) * h;
  }
  return k;
}

double SolutionField::mass(std::size_t time_index) const {
  const double dx = x_grid[1] - x_grid[0];
  double sum = 0.0;
  for (double v : w.at(time_index)) {
    sum += v;
  }
  return sum * dx;
}

// ---------------------------------------------------------------------------

std::complex<double> propagator_laplace(const KernelSpec& spec, double k, double c_alpha, std::complex<double> s) {
  const cplx psi = spec.classical() ? cplx(1.0) : kernels::kernel_laplace(spec, s);
  return psi / (s * psi + c_alpha * c_alpha * k * k);
}

std::complex<double> solution_hat(const KernelSpec& spec, const InitialCondition& ic, double k, double t,
                                  double c_alpha) {
  spec.validate();
  ic.validate();
  if (!(t > 0.0)) {
    throw DomainError("solution_hat: t must be positive");
  }
  const double phi_hat = ic.fourier(k);
  if (k == 0.0) {
    return phi_hat;  // W_hat~(0, s) = phi_hat(0) / s
  }
  if (phi_hat == 0.0) {
    return 0.0;
  }
  const transforms::LaplaceFunction f{
      [&](cplx s) { return propagator_laplace(spec, k, c_alpha, s); }, "Fourier-Laplace propagator"};
  return phi_hat * inverse_laplace_at(f, t, k);
}

SolutionField solve(const KernelSpec& spec, const InitialCondition& ic, const std::vector<double>& times,
                    const Setup& setup) {
  validate_all(spec, ic, setup);
  check_times(times);
  check_profile_edges(ic, setup);

  SolutionField field;
  field.x_grid = setup.x_grid();
  field.k_grid = setup.k_grid();
  field.times = times;
  field.c_alpha = setup.c_alpha;
  InverseFourier ift(setup.points);
  for (double t : times) {
    auto w_hat = even_spectrum(field.k_grid, [&](double k) { return solution_hat(spec, ic, k, t, setup.c_alpha); });
    double residue = 0.0;
    auto w = ift.apply(w_hat, setup.dk(), residue);
    check_solution_edges(w, t);
    field.max_imag_residue = std::max(field.max_imag_residue, residue);
    field.w_hat.push_back(std::move(w_hat));
    field.w.push_back(std::move(w));
  }
  return field;
}

double initial_profile_limit(const KernelSpec& spec, const InitialCondition& ic, double k, double c_alpha) {
  spec.validate();
  ic.validate();
  const double phi_hat = ic.fourier(k);
  if (k == 0.0 || phi_hat == 0.0) {
    return phi_hat;
  }
  const transforms::LaplaceFunction f{
      [&](cplx s) { return phi_hat * propagator_laplace(spec, k, c_alpha, s); }, "W_hat~(k, s)"};
  return ivt_limit(f, k);
}

double deviation(const KernelSpec& spec, const InitialCondition& ic, double t, const Setup& setup) {
  return deviation_curve(spec, ic, {t}, setup).front();
}

// Unlike solve, no edge check on W: for small t a delta or box profile is not
// resolved by the grid and rings at the edges, but the norm is still defined.
std::vector<double> deviation_curve(const KernelSpec& spec, const InitialCondition& ic,
                                    const std::vector<double>& times, const Setup& setup) {
  validate_all(spec, ic, setup);
  check_times(times);
  check_profile_edges(ic, setup);
  const std::vector<double> k_grid = setup.k_grid();
  InverseFourier ift(setup.points);
  std::vector<double> out;
  for (double t : times) {
    const auto w_hat = even_spectrum(k_grid, [&](double k) { return solution_hat(spec, ic, k, t, setup.c_alpha); });
    out.push_back(deviation_norm(ic, setup, k_grid, w_hat, ift));
  }
  return out;
}

double closed_form_limit_deviation(const KernelSpec& spec, const InitialCondition& ic, const Setup& setup) {
  validate_all(spec, ic, setup);
  const double limit = admissibility::analytic_limit(spec).value();
  const double c2 = setup.c_alpha * setup.c_alpha;
  const std::vector<double> k_grid = setup.k_grid();
  const auto w_hat = even_spectrum(k_grid, [&](double k) -> cplx {
    if (k == 0.0) return ic.fourier(k);
    if (std::isinf(limit)) return 0.0;
    return ic.fourier(k) / (1.0 + c2 * k * k * limit);
  });
  InverseFourier ift(setup.points);
  return deviation_norm(ic, setup, k_grid, w_hat, ift);
}

InitialDeviationLimit probe_initial_deviation(const KernelSpec& spec, const InitialCondition& ic,
                                              const Setup& setup) {
  validate_all(spec, ic, setup);
  // Windows of eight decades, t = 10^-j0 .. 10^-(j0+7), moved deeper until two
  // successive extrapolations agree; for a delta profile the largest grid
  // wavenumber only reaches its small-t regime once c^2 k^2 t^alpha << 1.
  InitialDeviationLimit out;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int j0 = 1; j0 <= kDeepestWindowStart; j0 += 8) {
    std::vector<double> times;
    for (int j = j0; j < j0 + 8; ++j) {
      times.push_back(std::pow(10.0, -j));
    }
    const std::vector<double> d = deviation_curve(spec, ic, times, setup);
    out.extrapolated = transforms::extrapolate_sequence(d).value;
    if (std::abs(out.extrapolated - previous) <= 1e-2 * kLimitAgreement) {
      break;
    }
    previous = out.extrapolated;
  }

  const std::vector<double> k_grid = setup.k_grid();
  const auto w_hat =
      even_spectrum(k_grid, [&](double k) -> cplx { return initial_profile_limit(spec, ic, k, setup.c_alpha); });
  InverseFourier ift(setup.points);
  out.from_limit = deviation_norm(ic, setup, k_grid, w_hat, ift);
  out.agree = std::abs(out.extrapolated - out.from_limit) <= kLimitAgreement;
  return out;
}

std::complex<double> transformed_hat(const KernelSpec& spec, const InitialCondition& ic, double k, double t,
                                     double c_alpha) {
  const double phi_hat = ic.fourier(k);
  if (k == 0.0 || phi_hat == 0.0) {
    return 0.0;  // source term is proportional to k^2
  }
  const double c2k2 = c_alpha * c_alpha * k * k;
  const transforms::LaplaceFunction f{[&](cplx s) {
                                        const cplx psi = spec.classical() ? cplx(1.0) : kernels::kernel_laplace(spec, s);
                                        return -c2k2 * phi_hat / (s * (psi * s + c2k2));
                                      },
                                      "chi_hat~(k, s)"};
  return inverse_laplace_at(f, t, k);
}

TransformedSolution solve_transformed(const KernelSpec& spec, const InitialCondition& ic,
                                      const std::vector<double>& times, const Setup& setup) {
  validate_all(spec, ic, setup);
  if (!ic.twice_differentiable()) {
    throw DomainError("solve_transformed: the source term c^2 phi'' needs a twice-differentiable profile");
  }
  check_times(times);
  check_profile_edges(ic, setup);

  TransformedSolution out;
  for (SolutionField* f : {&out.chi, &out.reconstructed}) {
    f->x_grid = setup.x_grid();
    f->k_grid = setup.k_grid();
    f->times = times;
    f->c_alpha = setup.c_alpha;
  }
  InverseFourier ift(setup.points);
  for (double t : times) {
    auto chi_hat =
        even_spectrum(out.chi.k_grid, [&](double k) { return transformed_hat(spec, ic, k, t, setup.c_alpha); });
    double residue = 0.0;
    auto chi = ift.apply(chi_hat, setup.dk(), residue);
    out.chi.max_imag_residue = std::max(out.chi.max_imag_residue, residue);

    std::vector<cplx> w_hat(chi_hat.size());
    for (std::size_t i = 0; i < chi_hat.size(); ++i) {
      w_hat[i] = chi_hat[i] + ic.fourier(out.chi.k_grid[i]);
    }
    std::vector<double> w(chi.size());
    for (std::size_t j = 0; j < chi.size(); ++j) {
      w[j] = chi[j] + ic.profile(out.chi.x_grid[j]);
    }
    check_solution_edges(w, t);
    out.reconstructed.max_imag_residue = out.chi.max_imag_residue;
    out.chi.w_hat.push_back(std::move(chi_hat));
    out.chi.w.push_back(std::move(chi));
    out.reconstructed.w_hat.push_back(std::move(w_hat));
    out.reconstructed.w.push_back(std::move(w));
  }
  return out;
}

double transformed_initial_limit(const KernelSpec& spec, const InitialCondition& ic, double k, double c_alpha) {
  spec.validate();
  ic.validate();
  const double phi_hat = ic.fourier(k);
  if (k == 0.0 || phi_hat == 0.0) {
    return 0.0;
  }
  const double c2k2 = c_alpha * c_alpha * k * k;
  const transforms::LaplaceFunction f{[&](cplx s) {
                                        const cplx psi = spec.classical() ? cplx(1.0) : kernels::kernel_laplace(spec, s);
                                        return -c2k2 * phi_hat / (s * (psi * s + c2k2));
                                      },
                                      "chi_hat~(k, s)"};
  return ivt_limit(f, k);
}

}  // namespace fracdiff::diffusion
