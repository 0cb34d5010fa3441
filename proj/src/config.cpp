#include "fracdiff/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "fracdiff/errors.hpp"

namespace fracdiff::config {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) {
    throw DomainError("config: '" + where + "' must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw DomainError("config: unknown key '" + key + "' in '" + where + "'");
    }
  }
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj.at(key).is_number()) {
    throw DomainError(std::string("config: '") + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

std::string text(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj.at(key).is_string()) {
    throw DomainError(std::string("config: '") + key + "' must be a string");
  }
  return obj.at(key).get<std::string>();
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

void RunConfig::validate() const {
  kernel.validate();
  ic.validate();
  grid.validate();
  if (times.empty()) {
    throw DomainError("config: 'times' must list at least one time");
  }
  for (double t : times) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw DomainError("config: times must be positive");
    }
  }
  if (!ic.distributional()) {
    const double edge = std::abs(ic.profile(grid.half_width));
    if (!(edge < diffusion::kProfileEdgeTolerance)) {
      throw DomainError("config: initial profile does not decay at the boundary (|phi(L)| = " +
                        show(edge) + " >= 1e-12); increase grid.L");
    }
  }
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(root, {"kernel", "ic", "grid", "times", "output"}, "root");

  RunConfig cfg;
  if (root.contains("kernel")) {
    const json& k = root.at("kernel");
    reject_unknown(k, {"kind", "alpha", "tau", "m_norm", "beta", "gamma_p", "lambda"}, "kernel");
    cfg.kernel.kind = kernels::parse_kernel_kind(text(k, "kind", "caputo"));
    cfg.kernel.alpha = number(k, "alpha", cfg.kernel.alpha);
    cfg.kernel.tau = number(k, "tau", cfg.kernel.tau);
    cfg.kernel.m_norm = number(k, "m_norm", cfg.kernel.m_norm);
    cfg.kernel.beta = number(k, "beta", cfg.kernel.beta);
    cfg.kernel.gamma_p = number(k, "gamma_p", cfg.kernel.gamma_p);
    cfg.kernel.lambda = number(k, "lambda", cfg.kernel.lambda);
  }
  if (root.contains("ic")) {
    const json& ic = root.at("ic");
    reject_unknown(ic, {"kind", "sigma0", "halfwidth"}, "ic");
    cfg.ic.kind = diffusion::parse_ic_kind(text(ic, "kind", "gaussian"));
    if (cfg.ic.kind == diffusion::InitialCondition::Kind::Gaussian) {
      cfg.ic.width = number(ic, "sigma0", 1.0);
    } else if (cfg.ic.kind == diffusion::InitialCondition::Kind::Box) {
      if (!ic.contains("halfwidth")) {
        throw DomainError("config: box initial condition needs 'halfwidth'");
      }
      cfg.ic.width = number(ic, "halfwidth", 0.0);
    }
  }
  if (root.contains("grid")) {
    const json& g = root.at("grid");
    reject_unknown(g, {"L", "N", "c_alpha"}, "grid");
    cfg.grid.half_width = number(g, "L", cfg.grid.half_width);
    const double n = number(g, "N", static_cast<double>(cfg.grid.points));
    if (!(n >= 1.0) || n != std::floor(n) || n > 1 << 24) {
      throw DomainError("config: grid.N must be a positive integer");
    }
    cfg.grid.points = static_cast<std::size_t>(n);
    cfg.grid.c_alpha = number(g, "c_alpha", cfg.grid.c_alpha);
  }
  if (root.contains("times")) {
    const json& t = root.at("times");
    if (!t.is_array()) {
      throw DomainError("config: 'times' must be an array of numbers");
    }
    cfg.times.clear();
    for (const json& v : t) {
      if (!v.is_number()) {
        throw DomainError("config: 'times' must be an array of numbers");
      }
      cfg.times.push_back(v.get<double>());
    }
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    reject_unknown(o, {"path", "format"}, "output");
    cfg.output_path = text(o, "path", cfg.output_path);
    cfg.format = parse_format(text(o, "format", "csv"));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace fracdiff::config
