#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracdiff/admissibility.hpp"
#include "fracdiff/diffusion.hpp"
#include "fracdiff/kernels.hpp"

namespace fracdiff::report {

/// 17 significant digits (%.17g).
std::string format_number(double v);

/// Admissibility report as JSON with a fixed key order:
/// kernel, laplace_limit, analytic_expectation, verdict, singularity,
/// consistent, then diagnostics. Non-finite numbers are written as the
/// strings "inf" / "-inf" / "nan".
std::string admissibility_json(const admissibility::AdmissibilityReport& r, int indent = 2);

std::string kernel_json(const kernels::KernelSpec& spec, int indent = 2);

/// Header "x,t=<t0>,t=<t1>,...", one row per grid point.
void write_solution_csv(std::ostream& out, const diffusion::SolutionField& field);

/// Header "t,D", one row per time.
void write_deviation_csv(std::ostream& out, const std::vector<double>& times, const std::vector<double>& deviations);

/// fourier_deviation marks deviations measured in k space (delta profile).
std::string solution_json(const diffusion::SolutionField& field, const std::vector<double>& deviations,
                          bool fourier_deviation, int indent = 2);

}  // namespace fracdiff::report
