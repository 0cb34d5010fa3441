#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/admissibility.hpp"
#include "fracdiff/config.hpp"
#include "fracdiff/diffusion.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/report.hpp"
#include "fracdiff/specfun.hpp"
#include "fracdiff/transforms.hpp"

namespace {

using namespace fracdiff;
using kernels::KernelKind;
using kernels::KernelSpec;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitSolver = 4;
constexpr int kExitInadmissible = 10;

// Shortest decimal that reads back to the same double.
std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

int report_error(const std::string& cmd, const std::exception& e, int code) {
  std::cerr << "fracdiff " << cmd << ": " << e.what() << "\n";
  return code;
}

struct KernelFlags {
  std::optional<std::string> kind;
  std::optional<double> alpha, tau, m_norm, beta, gamma_p, lambda;

  void add(CLI::App* cmd) {
    cmd->add_option("--kernel", kind, "caputo | cf | ab | prabhakar");
    cmd->add_option("--alpha", alpha, "derivative order, 0 < alpha <= 1");
    cmd->add_option("--tau", tau, "characteristic time (CF, AB)");
    cmd->add_option("--m-norm", m_norm, "normalization M (CF, AB)");
    cmd->add_option("--beta", beta, "Prabhakar beta");
    cmd->add_option("--gamma", gamma_p, "Prabhakar gamma");
    cmd->add_option("--lambda", lambda, "Prabhakar lambda");
  }

  void apply(KernelSpec& spec) const {
    if (kind) spec.kind = kernels::parse_kernel_kind(*kind);
    if (alpha) spec.alpha = *alpha;
    if (tau) spec.tau = *tau;
    if (m_norm) spec.m_norm = *m_norm;
    if (beta) spec.beta = *beta;
    if (gamma_p) spec.gamma_p = *gamma_p;
    if (lambda) spec.lambda = *lambda;
  }
};

struct RunFlags {
  std::string config_path;
  KernelFlags kernel;
  std::optional<std::string> ic;
  std::optional<double> sigma0, halfwidth, half_width, c_alpha;
  std::optional<std::size_t> points;
  std::vector<double> times;
  std::optional<std::string> output, format;

  void add(CLI::App* cmd, bool with_run_options) {
    cmd->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    kernel.add(cmd);
    if (!with_run_options) return;
    cmd->add_option("--ic", ic, "delta | gaussian | box");
    cmd->add_option("--sigma0", sigma0, "Gaussian width");
    cmd->add_option("--halfwidth", halfwidth, "box half-width");
    cmd->add_option("--L", half_width, "grid half-width");
    cmd->add_option("--N", points, "grid points (power of two)");
    cmd->add_option("--c-alpha", c_alpha, "diffusivity c_alpha");
    cmd->add_option("--times", times, "output times")->delimiter(',');
    cmd->add_option("--output", output, "output path prefix");
    cmd->add_option("--format", format, "csv | json");
  }

  config::RunConfig load() const {
    config::RunConfig cfg = config_path.empty() ? config::RunConfig{} : config::load_config(config_path);
    kernel.apply(cfg.kernel);
    if (ic) {
      cfg.ic.kind = diffusion::parse_ic_kind(*ic);
      if (cfg.ic.kind == diffusion::InitialCondition::Kind::Box && !halfwidth && !config_has_box()) {
        throw DomainError("box initial condition needs --halfwidth");
      }
    }
    if (sigma0 && cfg.ic.kind == diffusion::InitialCondition::Kind::Gaussian) cfg.ic.width = *sigma0;
    if (halfwidth && cfg.ic.kind == diffusion::InitialCondition::Kind::Box) cfg.ic.width = *halfwidth;
    if (half_width) cfg.grid.half_width = *half_width;
    if (points) cfg.grid.points = *points;
    if (c_alpha) cfg.grid.c_alpha = *c_alpha;
    if (!times.empty()) cfg.times = times;
    if (output) cfg.output_path = *output;
    if (format) cfg.format = config::parse_format(*format);
    return cfg;
  }

 private:
  bool config_has_box() const {
    return !config_path.empty() &&
           config::load_config(config_path).ic.kind == diffusion::InitialCondition::Kind::Box;
  }
};

// ---------------------------------------------------------------------------

struct MlFlags {
  double alpha = 1.0, beta = 1.0, gamma_p = 1.0;
  double z = 0.0, zi = 0.0;
};

int cmd_ml(const MlFlags& f) {
  specfun::MLParams p{f.alpha, f.beta, f.gamma_p};
  try {
    p.validate();
    const std::complex<double> v = specfun::mittag_leffler(p, {f.z, f.zi});
    if (f.zi == 0.0 && v.imag() == 0.0) {
      std::cout << shortest(v.real()) << "\n";
    } else {
      std::cout << shortest(v.real()) << " " << shortest(v.imag()) << "\n";
    }
  } catch (const NonConvergence& e) {
    return report_error("ml", e, kExitNonConvergence);
  } catch (const DomainError& e) {
    return report_error("ml", e, kExitUsage);
  }
  return kExitOk;
}

struct KernelCmdFlags {
  KernelFlags kernel;
  std::vector<double> t_values;
  std::vector<double> s_values;
};

int cmd_kernel(const KernelCmdFlags& f) {
  KernelSpec spec;
  try {
    f.kernel.apply(spec);
    spec.validate();
  } catch (const DomainError& e) {
    return report_error("kernel", e, kExitUsage);
  }
  std::cout << report::kernel_json(spec) << "\n";
  if (!spec.classical()) {
    std::cout << "kappa = " << report::format_number(spec.kappa()) << "\n";
  }
  try {
    for (double t : f.t_values) {
      std::cout << "Psi(t=" << shortest(t) << ") = " << report::format_number(kernels::kernel_time(spec, t)) << "\n";
    }
    for (double s : f.s_values) {
      std::cout << "psi(s=" << shortest(s) << ") = "
                << report::format_number(kernels::kernel_laplace(spec, {s, 0.0}).real()) << "\n";
    }
  } catch (const DomainError& e) {
    return report_error("kernel", e, kExitUsage);
  }
  return kExitOk;
}

int cmd_admit(const RunFlags& f) {
  KernelSpec spec;
  try {
    spec = f.load().kernel;
    spec.validate();
  } catch (const DomainError& e) {
    return report_error("admit", e, kExitUsage);
  }
  const auto r = admissibility::full_report(spec);
  std::cout << report::admissibility_json(r) << "\n";
  return r.laplace_verdict == admissibility::Verdict::Admissible ? kExitOk : kExitInadmissible;
}

struct InvertFlags {
  KernelFlags kernel;
  double t = 1.0;
  std::optional<double> k;
  double c_alpha = 1.0;
};

int cmd_invert(const InvertFlags& f) {
  KernelSpec spec;
  try {
    f.kernel.apply(spec);
    spec.validate();
    if (!(f.t > 0.0)) throw DomainError("t must be positive");
    if (!f.k && spec.classical()) throw DistributionalKernel("alpha = 1 kernel is a delta; use --k for the propagator");
  } catch (const DomainError& e) {
    return report_error("invert", e, kExitUsage);
  }
  transforms::LaplaceFunction F;
  std::optional<double> direct;
  if (f.k) {
    const double k = *f.k;
    F.eval = [&spec, k, c = f.c_alpha](std::complex<double> s) { return diffusion::propagator_laplace(spec, k, c, s); };
    F.meta = "propagator at k = " + shortest(k);
  } else {
    F.eval = [&spec](std::complex<double> s) { return kernels::kernel_laplace(spec, s); };
    F.meta = spec.describe();
    direct = kernels::kernel_time(spec, f.t);
  }
  try {
    const auto c = transforms::invert_laplace_checked(F, f.t);
    std::cout << "talbot = " << report::format_number(c.talbot) << "\n";
    std::cout << "stehfest = " << report::format_number(c.stehfest) << "\n";
    std::cout << "relative_gap = " << report::format_number(c.relative_gap) << "\n";
    std::cout << "disagreement = " << (c.disagreement ? "true" : "false") << "\n";
    if (direct) std::cout << "direct = " << report::format_number(*direct) << "\n";
  } catch (const Error& e) {
    return report_error("invert", e, kExitSolver);
  }
  return kExitOk;
}

int cmd_solve(const RunFlags& f) {
  config::RunConfig cfg;
  try {
    cfg = f.load();
    cfg.validate();
  } catch (const DomainError& e) {
    return report_error("solve", e, kExitUsage);
  }

  try {
    const auto field = diffusion::solve(cfg.kernel, cfg.ic, cfg.times, cfg.grid);
    const auto dev = diffusion::deviation_curve(cfg.kernel, cfg.ic, cfg.times, cfg.grid);
    const bool fourier = cfg.ic.distributional();

    const std::string sol_path = cfg.output_path + ".solution";
    const std::string dev_path = cfg.output_path + ".deviation";
    if (cfg.format == config::OutputFormat::Csv) {
      std::ofstream sol(sol_path + ".csv");
      std::ofstream d(dev_path + ".csv");
      if (!sol || !d) throw Error("cannot write output under '" + cfg.output_path + "'");
      report::write_solution_csv(sol, field);
      report::write_deviation_csv(d, cfg.times, dev);
    } else {
      std::ofstream out(sol_path + ".json");
      if (!out) throw Error("cannot write output under '" + cfg.output_path + "'");
      out << report::solution_json(field, dev, fourier) << "\n";
    }

    std::size_t imin = 0;
    for (std::size_t i = 1; i < cfg.times.size(); ++i) {
      if (cfg.times[i] < cfg.times[imin]) imin = i;
    }
    std::cout << cfg.kernel.describe() << ", " << cfg.ic.describe() << "\n";
    std::cout << "D(t_min=" << shortest(cfg.times[imin]) << ") = " << report::format_number(dev[imin])
              << (fourier ? "  [max_k |W_hat - phi_hat|]" : "  [max_x |W - phi|]") << "\n";
    const bool nonsingular =
        cfg.kernel.kind == KernelKind::CaputoFabrizio || cfg.kernel.kind == KernelKind::AtanganaBaleanu;
    if (nonsingular && !cfg.kernel.classical()) {
      std::cout << "closed-form D(0+) = "
                << report::format_number(diffusion::closed_form_limit_deviation(cfg.kernel, cfg.ic, cfg.grid)) << "\n";
    }
    const auto probe = diffusion::probe_initial_deviation(cfg.kernel, cfg.ic, cfg.grid);
    std::cout << "D(0+) extrapolated = " << report::format_number(probe.extrapolated)
              << ", from initial-value limit = " << report::format_number(probe.from_limit) << " -> "
              << (probe.agree ? "agree" : "DISAGREE") << "\n";
    std::cout << "mass error = " << report::format_number(field.mass(imin) - cfg.ic.mass()) << "\n";
    if (!probe.agree) {
      std::cerr << "fracdiff solve: the two t -> 0 estimates differ by more than "
                << report::format_number(diffusion::kLimitAgreement) << "\n";
      return kExitSolver;
    }
  } catch (const Error& e) {
    return report_error("solve", e, kExitSolver);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TableRow {
  KernelSpec spec;
  std::string family;
  admissibility::Verdict expected;
};

std::vector<TableRow> verdict_table_rows() {
  using admissibility::Verdict;
  std::vector<TableRow> rows;
  for (int i = 1; i <= 9; ++i) {
    const double a = i / 10.0;
    rows.push_back({KernelSpec::caputo(a), "caputo", Verdict::Admissible});
    rows.push_back({KernelSpec::caputo_fabrizio(a), "cf", Verdict::Inadmissible});
    rows.push_back({KernelSpec::atangana_baleanu(a), "ab", Verdict::Inadmissible});
    for (double b : {0.5, 0.8, 1.0, 1.5}) {
      rows.push_back({KernelSpec::prabhakar(a, b, 1.0, -1.0), "prabhakar(beta=" + shortest(b) + ")",
                      b < 1.0 ? Verdict::Admissible : Verdict::Inadmissible});
    }
  }
  return rows;
}

int cmd_reproduce(const std::string& csv_path) {
  std::ostringstream csv;
  csv << "kernel,alpha,laplace_limit,analytic_expectation,verdict,singularity,consistent,expected\n";
  bool all_ok = true;
  std::printf("%-22s %5s %14s %14s %-13s %-9s %-10s %s\n", "kernel", "alpha", "lim[s psi]^-1", "closed form",
              "verdict", "Psi(0+)", "consistent", "expected");
  for (const auto& row : verdict_table_rows()) {
    const auto r = admissibility::full_report(row.spec);
    const bool matches = r.laplace_verdict == row.expected;
    all_ok = all_ok && matches && r.consistent;
    const std::string expectation =
        r.analytic_expectation ? report::format_number(*r.analytic_expectation) : std::string("n/a");
    std::printf("%-22s %5.1f %14.6g %14.6g %-13s %-9s %-10s %s\n", row.family.c_str(), row.spec.alpha,
                r.laplace_limit.value, r.analytic_expectation.value_or(NAN),
                std::string(admissibility::to_string(r.laplace_verdict)).c_str(),
                std::string(admissibility::to_string(r.singularity.verdict)).c_str(), r.consistent ? "yes" : "NO",
                matches ? "ok" : "MISMATCH");
    csv << row.family << ',' << report::format_number(row.spec.alpha) << ','
        << report::format_number(r.laplace_limit.value) << ',' << expectation << ','
        << admissibility::to_string(r.laplace_verdict) << ',' << admissibility::to_string(r.singularity.verdict)
        << ',' << (r.consistent ? "true" : "false") << ',' << admissibility::to_string(row.expected) << "\n";
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) {
      std::cerr << "fracdiff reproduce-paper: cannot write '" << csv_path << "'\n";
      return kExitFailure;
    }
    out << csv.str();
  }
  std::printf("%s\n", all_ok ? "all rows consistent" : "INCONSISTENT ROWS PRESENT");
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-derivative kernels, admissibility checks and diffusion runs"};
  app.require_subcommand(1);
  std::function<int()> action;

  MlFlags ml;
  auto* ml_cmd = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E^gamma_{alpha,beta}(z)");
  ml_cmd->add_option("--alpha", ml.alpha)->required();
  ml_cmd->add_option("--beta", ml.beta);
  ml_cmd->add_option("--gamma", ml.gamma_p);
  ml_cmd->add_option("--z", ml.z, "real part of z")->required();
  ml_cmd->add_option("--zi", ml.zi, "imaginary part of z");
  ml_cmd->callback([&] { action = [&] { return cmd_ml(ml); }; });

  KernelCmdFlags kern;
  auto* kernel_cmd = app.add_subcommand("kernel", "Print a kernel and evaluate Psi(t) / psi(s)");
  kern.kernel.add(kernel_cmd);
  kernel_cmd->add_option("--t", kern.t_values, "time points")->delimiter(',');
  kernel_cmd->add_option("--s", kern.s_values, "real Laplace variables")->delimiter(',');
  kernel_cmd->callback([&] { action = [&] { return cmd_kernel(kern); }; });

  RunFlags admit;
  auto* admit_cmd = app.add_subcommand("admit", "Admissibility report as JSON; exit 0 admissible, 10 inadmissible");
  admit.add(admit_cmd, false);
  admit_cmd->callback([&] { action = [&] { return cmd_admit(admit); }; });

  InvertFlags inv;
  auto* invert_cmd = app.add_subcommand("invert", "Numerically invert psi(s) or the diffusion propagator at --k");
  inv.kernel.add(invert_cmd);
  invert_cmd->add_option("--t", inv.t, "time");
  invert_cmd->add_option("--k", inv.k, "wavenumber; inverts psi/(s psi + c^2 k^2)");
  invert_cmd->add_option("--c-alpha", inv.c_alpha);
  invert_cmd->callback([&] { action = [&] { return cmd_invert(inv); }; });

  RunFlags run;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the diffusion problem and write solution/deviation files");
  run.add(solve_cmd, true);
  solve_cmd->callback([&] { action = [&] { return cmd_solve(run); }; });

  std::string csv_path;
  auto* repro_cmd = app.add_subcommand("reproduce-paper", "Verdict table over kernels and alpha = 0.1 .. 0.9");
  repro_cmd->add_option("--csv", csv_path, "also write the table as CSV");
  repro_cmd->callback([&] { action = [&] { return cmd_reproduce(csv_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "fracdiff: " << e.what() << "\n";
    return kExitFailure;
  }
}
