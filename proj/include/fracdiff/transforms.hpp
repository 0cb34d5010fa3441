#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fracdiff::transforms {

/// A Laplace-domain function F(s), analytic right of `abscissa` and
/// continued analytically to the left wherever the inversion contour needs it.
struct LaplaceFunction {
  std::function<std::complex<double>(std::complex<double>)> eval;
  std::string meta;
  double abscissa = 0.0;

  std::complex<double> operator()(std::complex<double> s) const { return eval(s); }
};

enum class InversionMethod { Talbot, GaverStehfest };

inline constexpr int kTalbotNodes = 32;
inline constexpr int kStehfestOrder = 14;

/// f(t) from F(s). Talbot uses the fixed-Talbot contour with 32 nodes scaled
/// by 1/t; Gaver-Stehfest (order 14) samples F on the positive real axis and
/// is only meant as a cross-check. Throws InversionFailure if F cannot be
/// evaluated on the contour or the result is not finite.
double invert_laplace(const LaplaceFunction& f, double t, InversionMethod method = InversionMethod::Talbot);

struct CheckedInversion {
  double talbot = 0.0;
  double stehfest = 0.0;
  double relative_gap = 0.0;
  bool disagreement = false;  // relative gap above 1e-4
};

CheckedInversion invert_laplace_checked(const LaplaceFunction& f, double t);

// ---------------------------------------------------------------------------
// Initial-value theorem: lim_{t->0+} f(t) = lim_{s->inf} s F(s).

struct LimitOptions {
  double s0 = 1e2;
  double ratio = 10.0;
  int points = 8;
  double tolerance = 1e-8;
};

enum class LimitStatus { Converged, NotConverged, Diverged, Oscillating };

std::string_view to_string(LimitStatus status);

struct LimitSample {
  double s = 0.0;
  double s_times_f = 0.0;
};

struct LimitEstimate {
  double value = 0.0;  // +-inf when diverged
  bool converged = false;
  std::vector<LimitSample> samples;
  double extrapolation_residual = 0.0;  // |difference of the last two extrapolants|
  LimitStatus status = LimitStatus::NotConverged;
};

/// Estimates lim s F(s) along the positive real axis from s_j = s0 r^j.
/// Divergence and oscillation are reported in the status, not thrown.
LimitEstimate initial_value_limit(const LaplaceFunction& f, const LimitOptions& options = {});

/// Same estimator applied to a function already in the form g(s) = s F(s).
LimitEstimate limit_at_infinity(const std::function<double(double)>& g, const LimitOptions& options = {});

struct Extrapolation {
  double value = 0.0;
  double residual = 0.0;
};

/// Wynn epsilon extrapolation of a sequence converging like a sum of
/// geometric terms (e.g. power laws sampled on a geometric grid).
Extrapolation extrapolate_sequence(std::span<const double> seq);

}  // namespace fracdiff::transforms
