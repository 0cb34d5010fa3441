#include "fracdiff/admissibility.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "fracdiff/errors.hpp"

namespace fracdiff::admissibility {
namespace {

using kernels::KernelKind;
using kernels::KernelSpec;

constexpr int kProbeDecades = 12;
// Limiting slopes above this are treated as zero (bounded kernel).
constexpr double kSingularSlope = -1e-3;

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::Admissible ? "admissible" : "inadmissible"; }

std::string_view to_string(Singularity s) { return s == Singularity::Singular ? "singular" : "bounded"; }

transforms::LimitEstimate check_laplace_condition(const KernelSpec& spec) {
  spec.validate();
  if (spec.classical()) {
    transforms::LimitEstimate exact;
    exact.value = 0.0;
    exact.converged = true;
    exact.status = transforms::LimitStatus::Converged;
    return exact;
  }
  // [s psi]^-1 can carry a whole ladder of power-law corrections s^{beta-1-k alpha}
  // (gamma_p not an integer); these die out only far along the axis when alpha is small.
  constexpr std::array<double, 6> starts = {1e2, 1e9, 1e16, 1e30, 1e60, 1e120};
  auto g = [&](double s) { return 1.0 / (s * kernels::kernel_laplace(spec, {s, 0.0})).real(); };
  transforms::LimitEstimate est;
  for (double s0 : starts) {
    transforms::LimitOptions options;
    options.s0 = s0;
    est = transforms::limit_at_infinity(g, options);
    if (est.converged) {
      break;
    }
  }
  return est;
}

std::optional<double> analytic_limit(const KernelSpec& spec) {
  spec.validate();
  if (spec.classical()) {
    return 0.0;
  }
  switch (spec.kind) {
    case KernelKind::Caputo:
      return 0.0;
    case KernelKind::CaputoFabrizio:
    case KernelKind::AtanganaBaleanu:
      return (1.0 - spec.alpha) / spec.m_norm;
    case KernelKind::Prabhakar:
      if (spec.beta < 1.0) return 0.0;
      if (spec.beta == 1.0) return 1.0 - spec.alpha;
      return std::numeric_limits<double>::infinity();
  }
  return std::nullopt;
}

Verdict verdict_of(const transforms::LimitEstimate& estimate) {
  return estimate.converged && std::abs(estimate.value) < kZeroTolerance ? Verdict::Admissible
                                                                          : Verdict::Inadmissible;
}

SingularityProbe probe_singularity(const KernelSpec& spec) {
  spec.validate();
  if (spec.classical()) {
    throw DistributionalKernel("probe_singularity: alpha = 1 kernel is a delta distribution");
  }
  std::vector<double> log_values;
  double last = 0.0;
  for (int j = 1; j <= kProbeDecades; ++j) {
    last = kernels::kernel_time(spec, std::pow(10.0, -j));
    log_values.push_back(std::log(std::abs(last)));
  }

  SingularityProbe probe;
  probe.boundary_value = last;
  if (last == 0.0) {
    probe.verdict = Singularity::Bounded;
    probe.exponent = std::numeric_limits<double>::infinity();
    return probe;
  }
  // Local slopes d log|Psi| / d log t between consecutive decades.
  std::vector<double> slopes;
  for (std::size_t j = 0; j + 1 < log_values.size(); ++j) {
    slopes.push_back((log_values[j + 1] - log_values[j]) / -std::log(10.0));
  }
  const std::size_t tail = 8;
  const std::span<const double> recent(slopes.data() + slopes.size() - tail, tail);
  probe.exponent = transforms::extrapolate_sequence(recent).value;
  probe.verdict = probe.exponent < kSingularSlope ? Singularity::Singular : Singularity::Bounded;
  return probe;
}

AdmissibilityReport full_report(const KernelSpec& spec) {
  spec.validate();
  AdmissibilityReport report;
  report.kernel = spec;
  report.classical = spec.classical();
  report.laplace_limit = check_laplace_condition(spec);
  report.laplace_verdict = verdict_of(report.laplace_limit);
  report.analytic_expectation = analytic_limit(spec);
  if (spec.classical()) {
    report.singularity = {Singularity::Singular, std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity()};
  } else {
    report.singularity = probe_singularity(spec);
  }
  const bool admissible = report.laplace_verdict == Verdict::Admissible;
  const bool singular = report.singularity.verdict == Singularity::Singular;
  report.consistent = admissible == singular;
  return report;
}

}  // namespace fracdiff::admissibility
