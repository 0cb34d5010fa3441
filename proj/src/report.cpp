#include "fracdiff/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

namespace fracdiff::report {
namespace {

using ojson = nlohmann::ordered_json;

ojson number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ojson kernel_object(const kernels::KernelSpec& spec) {
  ojson k;
  k["kind"] = kernels::to_string(spec.kind);
  k["alpha"] = spec.alpha;
  k["tau"] = spec.tau;
  k["m_norm"] = spec.m_norm;
  k["beta"] = spec.beta;
  k["gamma_p"] = spec.gamma_p;
  k["lambda"] = spec.lambda;
  return k;
}

std::string dump(const ojson& j, int indent) { return j.dump(indent); }

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string kernel_json(const kernels::KernelSpec& spec, int indent) { return dump(kernel_object(spec), indent); }

std::string admissibility_json(const admissibility::AdmissibilityReport& r, int indent) {
  ojson j;
  j["kernel"] = kernel_object(r.kernel);
  j["laplace_limit"] = number_json(r.laplace_limit.value);
  j["analytic_expectation"] = r.analytic_expectation ? number_json(*r.analytic_expectation) : ojson(nullptr);
  j["verdict"] = admissibility::to_string(r.laplace_verdict);
  j["singularity"] = admissibility::to_string(r.singularity.verdict);
  j["consistent"] = r.consistent;
  j["classical"] = r.classical;
  j["limit_status"] = transforms::to_string(r.laplace_limit.status);
  j["limit_converged"] = r.laplace_limit.converged;
  j["extrapolation_residual"] = number_json(r.laplace_limit.extrapolation_residual);
  ojson samples = ojson::array();
  for (const auto& s : r.laplace_limit.samples) {
    samples.push_back({number_json(s.s), number_json(s.s_times_f)});
  }
  j["limit_samples"] = samples;
  j["boundary_value"] = number_json(r.singularity.boundary_value);
  j["singular_exponent"] = number_json(r.singularity.exponent);
  return dump(j, indent);
}

void write_solution_csv(std::ostream& out, const diffusion::SolutionField& field) {
  out << "x";
  for (double t : field.times) {
    out << ",t=" << format_number(t);
  }
  out << "\n";
  for (std::size_t j = 0; j < field.x_grid.size(); ++j) {
    out << format_number(field.x_grid[j]);
    for (std::size_t i = 0; i < field.times.size(); ++i) {
      out << ',' << format_number(field.w[i][j]);
    }
    out << "\n";
  }
}

void write_deviation_csv(std::ostream& out, const std::vector<double>& times, const std::vector<double>& deviations) {
  out << "t,D\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format_number(times[i]) << ',' << format_number(deviations[i]) << "\n";
  }
}

std::string solution_json(const diffusion::SolutionField& field, const std::vector<double>& deviations,
                          bool fourier_deviation, int indent) {
  ojson j;
  j["c_alpha"] = field.c_alpha;
  j["times"] = field.times;
  j["x"] = field.x_grid;
  j["W"] = field.w;
  j["deviation"] = deviations;
  j["deviation_norm"] = fourier_deviation ? "max_k |W_hat - phi_hat|" : "max_x |W - phi|";
  return dump(j, indent);
}

}  // namespace fracdiff::report
