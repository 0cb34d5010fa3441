#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/diffusion.hpp"
#include "fracdiff/kernels.hpp"

namespace fracdiff::config {

enum class OutputFormat { Csv, Json };

/// One run of the command-line tool. The file form is a JSON object:
///
///   { "kernel": {"kind": "cf", "alpha": 0.5, "tau": 1, "m_norm": 1,
///                "beta": 1, "gamma_p": 1, "lambda": 0},
///     "ic":     {"kind": "gaussian", "sigma0": 1},      // or "halfwidth" for box
///     "grid":   {"L": 40, "N": 4096, "c_alpha": 1},
///     "times":  [1e-4, 1e-2, 1],
///     "output": {"path": "run", "format": "csv"} }
///
/// Every key is optional; missing keys keep the defaults below.
struct RunConfig {
  kernels::KernelSpec kernel = {};
  diffusion::InitialCondition ic = {};
  diffusion::Setup grid = {};
  std::vector<double> times = {1e-4, 1e-2, 1.0};
  std::string output_path = "fracdiff_run";
  OutputFormat format = OutputFormat::Csv;

  /// Kernel, profile, grid and times checks; also the |phi(+-L)| < 1e-12 edge
  /// condition, so bad configurations fail before any computation.
  void validate() const;
};

OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);

/// Throws DomainError on malformed JSON, unknown keys or wrong types.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

}  // namespace fracdiff::config
