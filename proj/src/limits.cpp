#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdiff/errors.hpp"
#include "fracdiff/transforms.hpp"

namespace fracdiff::transforms {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Three successive increments of one sign, each larger than the last: the
// samples are running away (possibly slowly, e.g. s^0.05) rather than settling.
bool increments_growing(std::span<const double> g) {
  const std::size_t n = g.size();
  if (n < 4) {
    return false;
  }
  const double d1 = g[n - 3] - g[n - 4];
  const double d2 = g[n - 2] - g[n - 3];
  const double d3 = g[n - 1] - g[n - 2];
  const double floor = 1e-12 * std::max(1.0, std::abs(g[n - 1]));
  const bool same_sign = (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
  return same_sign && std::abs(d1) > floor && std::abs(d2) > std::abs(d1) && std::abs(d3) > std::abs(d2);
}

// Each of the last three samples exceeds its predecessor by a factor > 2.
bool magnitudes_doubling(std::span<const double> g) {
  const std::size_t n = g.size();
  if (n < 4) {
    return false;
  }
  for (std::size_t j = n - 3; j < n; ++j) {
    if (!(std::abs(g[j]) > 2.0 * std::abs(g[j - 1]))) {
      return false;
    }
  }
  return true;
}

bool increments_alternating(std::span<const double> g) {
  const std::size_t n = g.size();
  if (n < 5) {
    return false;
  }
  for (std::size_t j = n - 4; j + 1 < n; ++j) {
    const double d_prev = g[j] - g[j - 1];
    const double d = g[j + 1] - g[j];
    if (!(d * d_prev < 0.0) || std::abs(d) < 0.5 * std::abs(d_prev)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(LimitStatus status) {
  switch (status) {
    case LimitStatus::Converged:
      return "converged";
    case LimitStatus::NotConverged:
      return "not-converged";
    case LimitStatus::Diverged:
      return "diverged";
    case LimitStatus::Oscillating:
      return "oscillating";
  }
  return "unknown";
}

Extrapolation extrapolate_sequence(std::span<const double> seq) {
  const std::size_t n = seq.size();
  if (n == 0) {
    throw DomainError("extrapolate_sequence: empty sequence");
  }
  if (n == 1) {
    return {seq[0], kInf};
  }
  double scale = 0.0;
  for (double v : seq) {
    scale = std::max(scale, std::abs(v));
  }
  const double stall = 1e-15 * scale + 1e-300;

  Extrapolation best{seq[n - 1], std::abs(seq[n - 1] - seq[n - 2])};
  std::vector<double> prev(n + 1, 0.0);  // column k-1
  std::vector<double> cur(seq.begin(), seq.end());  // column k
  for (int col = 0; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    bool stalled = false;
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double diff = cur[j + 1] - cur[j];
      if (std::abs(diff) <= stall) {
        stalled = true;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    if (stalled) {
      // An even column that no longer moves is the limit.
      if (col % 2 == 0) {
        const double res = std::abs(cur.back() - cur[cur.size() - 2]);
        if (res <= best.residual) {
          best = {cur.back(), res};
        }
      }
      break;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if ((col + 1) % 2 == 0 && cur.size() >= 2) {
      const double res = std::abs(cur.back() - cur[cur.size() - 2]);
      if (std::isfinite(cur.back()) && res < best.residual) {
        best = {cur.back(), res};
      }
    }
  }
  return best;
}

LimitEstimate limit_at_infinity(const std::function<double(double)>& g, const LimitOptions& options) {
  if (options.points < 3 || !(options.s0 > 0.0) || !(options.ratio > 1.0)) {
    throw DomainError("limit estimator: need >= 3 points, s0 > 0 and ratio > 1");
  }
  LimitEstimate est;
  std::vector<double> values;
  double s = options.s0;
  for (int j = 0; j < options.points; ++j, s *= options.ratio) {
    const double v = g(s);
    est.samples.push_back({s, v});
    values.push_back(v);
  }

  const double last = values.back();
  if (!std::isfinite(last) || magnitudes_doubling(values) || increments_growing(values)) {
    est.status = LimitStatus::Diverged;
    est.value = std::signbit(last) ? -kInf : kInf;
    est.extrapolation_residual = kInf;
    est.converged = false;
    return est;
  }

  const Extrapolation ex = extrapolate_sequence(values);
  est.value = ex.value;
  est.extrapolation_residual = ex.residual;
  // Wynn happily assigns a value to undamped alternation (+-1 -> 0); don't trust it.
  if (increments_alternating(values)) {
    est.status = LimitStatus::Oscillating;
    est.converged = false;
    return est;
  }
  est.converged = ex.residual < options.tolerance;
  est.status = est.converged ? LimitStatus::Converged : LimitStatus::NotConverged;
  return est;
}

LimitEstimate initial_value_limit(const LaplaceFunction& f, const LimitOptions& options) {
  return limit_at_infinity([&](double s) { return s * f(std::complex<double>(s, 0.0)).real(); }, options);
}

}  // namespace fracdiff::transforms
