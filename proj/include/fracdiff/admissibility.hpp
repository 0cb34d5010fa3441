#pragma once

#include <optional>
#include <string_view>

#include "fracdiff/kernels.hpp"
#include "fracdiff/transforms.hpp"

namespace fracdiff::admissibility {

enum class Verdict { Admissible, Inadmissible };
enum class Singularity { Singular, Bounded };

std::string_view to_string(Verdict v);
std::string_view to_string(Singularity s);

// A limit of [s psi(s)]^-1 counts as zero below this, with the estimate converged.
inline constexpr double kZeroTolerance = 1e-8;

struct SingularityProbe {
  Singularity verdict = Singularity::Bounded;
  double boundary_value = 0.0;  // Psi at the smallest probed t
  double exponent = 0.0;        // limiting log-log slope of Psi as t -> 0+
};

struct AdmissibilityReport {
  kernels::KernelSpec kernel;
  transforms::LimitEstimate laplace_limit;
  Verdict laplace_verdict = Verdict::Inadmissible;
  std::optional<double> analytic_expectation;
  SingularityProbe singularity;
  bool consistent = false;
  bool classical = false;
};

/// Estimate of lim_{s->inf} [s psi(s, alpha)]^-1, sampled from s0 = 1e2 and,
/// if that does not settle, from progressively larger s0 (up to 1e120); the
/// last attempt is returned when none converges. alpha = 1 is reported as
/// an exact zero (classical derivative, psi = 1).
transforms::LimitEstimate check_laplace_condition(const kernels::KernelSpec& spec);

/// Closed-form value of the same limit: 0 for Caputo, (1-alpha)/M for CF and
/// AB, and for Prabhakar 0 / (1-alpha) / +inf for beta <, =, > 1.
std::optional<double> analytic_limit(const kernels::KernelSpec& spec);

Verdict verdict_of(const transforms::LimitEstimate& estimate);

/// Samples Psi at t = 10^-1 .. 10^-12 and extrapolates the local log-log slope.
/// A strictly negative limiting slope means Psi blows up at 0+.
SingularityProbe probe_singularity(const kernels::KernelSpec& spec);

AdmissibilityReport full_report(const kernels::KernelSpec& spec);

}  // namespace fracdiff::admissibility
