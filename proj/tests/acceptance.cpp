// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/admissibility.hpp"
#include "fracdiff/diffusion.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/specfun.hpp"
#include "fracdiff/transforms.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using diffusion::InitialCondition;
using kernels::KernelSpec;
using cplx = std::complex<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) {
    o.detail = why;
  }
  o.pass = false;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) {
    out.push_back(cell);
  }
  return out;
}

Outcome verdict_table() {
  Outcome o;
  const auto csv = std::filesystem::temp_directory_path() / "fracdiff_acceptance_table.csv";
  const std::string cmd = std::string(FRACDIFF_BIN) + " reproduce-paper --csv " + csv.string() + " > /dev/null 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    fail(o, "command exited with status " + std::to_string(WEXITSTATUS(status)));
  }
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  const auto header = split(line);
  if (header.size() < 7 || header[0] != "kernel" || header[4] != "verdict" || header[6] != "consistent") {
    fail(o, "unexpected header '" + line + "'");
    return o;
  }
  int rows = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    const std::string& kernel = cells[0];
    const bool admissible_expected = kernel == "caputo" || kernel == "prabhakar(beta=0.5)" ||
                                     kernel == "prabhakar(beta=0.8)";
    const std::string want = admissible_expected ? "admissible" : "inadmissible";
    if (cells[4] != want) fail(o, kernel + " alpha=" + cells[1] + " gave " + cells[4]);
    if (cells[6] != "true") fail(o, kernel + " alpha=" + cells[1] + " is not consistent");
    if (std::find(seen.begin(), seen.end(), kernel) == seen.end()) seen.push_back(kernel);
    ++rows;
  }
  const std::vector<std::string> families{"caputo", "cf", "ab", "prabhakar(beta=0.5)", "prabhakar(beta=0.8)",
                                          "prabhakar(beta=1)", "prabhakar(beta=1.5)"};
  for (const auto& f : families) {
    if (std::find(seen.begin(), seen.end(), f) == seen.end()) fail(o, "missing rows for " + f);
  }
  if (rows != 63) fail(o, std::to_string(rows) + " rows instead of 63");
  if (seconds >= 30.0) fail(o, "took " + fmt(seconds) + " s");
  if (o.pass) o.detail = std::to_string(rows) + " rows as expected, all consistent, " + fmt(seconds) + " s";
  return o;
}

Outcome closed_form_limits() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.25, 0.5, 0.75}) {
    for (double m : {1.0, 2.0}) {
      for (auto spec : {KernelSpec::caputo_fabrizio(a, m), KernelSpec::atangana_baleanu(a, m)}) {
        const auto est = admissibility::check_laplace_condition(spec);
        const double err = std::abs(est.value - (1.0 - a) / m);
        worst = std::max(worst, err);
        if (!(err < 1e-6)) fail(o, spec.describe() + " off by " + fmt(err));
      }
    }
  }
  if (o.pass) o.detail = "12 limits, max error " + fmt(worst);
  return o;
}

Outcome caputo_spectrum() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.8}) {
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      for (double t : {0.01, 0.1, 1.0, 2.0, 5.0}) {
        const cplx got = diffusion::solution_hat(KernelSpec::caputo(a), InitialCondition::delta(), k, t);
        const double want = specfun::mittag_leffler(specfun::MLParams{a, 1.0, 1.0}, -k * k * std::pow(t, a));
        const double err = std::abs(got - want);
        worst = std::max(worst, err);
        if (!(err < 1e-6)) fail(o, "alpha=" + fmt(a) + " k=" + fmt(k) + " t=" + fmt(t) + " off by " + fmt(err));
      }
    }
  }
  if (o.pass) o.detail = "75 points, max error " + fmt(worst);
  return o;
}

Outcome initial_condition() {
  Outcome o;
  const auto ic = InitialCondition::gaussian(1.0);
  const std::vector<double> times{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const auto d = diffusion::deviation_curve(KernelSpec::caputo(0.5), ic, times);
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (!(d[i] < d[i - 1])) fail(o, "Caputo D not decreasing at t=" + fmt(times[i]));
  }
  if (!(d.back() < 1e-2)) fail(o, "Caputo D(1e-6) = " + fmt(d.back()));

  const double gap = oracle::lorentzian_gaussian_gap(2.0, 1.0, 1.0);
  const auto cf = diffusion::deviation_curve(KernelSpec::caputo_fabrizio(0.5), ic, times);
  // Converging: successive distances to the gap shrink, and the last is within 1e-3.
  for (std::size_t i = 1; i < cf.size(); ++i) {
    if (!(std::abs(cf[i] - gap) <= std::abs(cf[i - 1] - gap))) fail(o, "CF D not approaching the gap");
  }
  if (!(std::abs(cf.back() - gap) < 1e-3)) fail(o, "CF D(1e-6) = " + fmt(cf.back()) + ", gap " + fmt(gap));
  if (!(gap > 0.0)) fail(o, "gap not positive");
  if (o.pass) {
    o.detail = "Caputo D(1e-6) = " + fmt(d.back()) + "; CF D(1e-6) = " + fmt(cf.back()) + " vs gap " + fmt(gap);
  }
  return o;
}

Outcome classical_limit() {
  Outcome o;
  double worst = 0.0;
  for (auto spec : {KernelSpec::caputo(1.0), KernelSpec::caputo_fabrizio(1.0), KernelSpec::atangana_baleanu(1.0),
                    KernelSpec::prabhakar(1.0, 0.8, 1.0, -1.0)}) {
    const auto field = diffusion::solve(spec, InitialCondition::gaussian(1.0), {0.1, 1.0});
    for (std::size_t i = 0; i < field.times.size(); ++i) {
      for (std::size_t j = 0; j < field.x_grid.size(); ++j) {
        const double err = std::abs(field.w[i][j] - oracle::heat_gaussian(field.x_grid[j], field.times[i], 1.0, 1.0));
        worst = std::max(worst, err);
      }
    }
  }
  if (!(worst < 1e-6)) fail(o, "max error " + fmt(worst));
  if (o.pass) o.detail = "4 families, max error " + fmt(worst);
  return o;
}

Outcome special_functions() {
  Outcome o;
  auto E = [](double a, double b, double g, cplx z) { return specfun::mittag_leffler(specfun::MLParams{a, b, g}, z); };
  double worst = 0.0;
  auto check = [&](cplx got, cplx want, const std::string& what) {
    const double err = oracle::rel_err(got, want);
    worst = std::max(worst, err);
    if (!(err < 1e-12)) fail(o, what + " off by " + fmt(err));
  };
  for (cplx z : {cplx(-7.5), cplx(-1.0), cplx(0.3), cplx(1.0), cplx(2.0), cplx(9.0), cplx(0.5, 0.5), cplx(-3.0, 4.0),
                 cplx(12.0, -20.0), cplx(-9.0, 2.0)}) {
    check(E(1, 1, 1, z), std::exp(z), "E_1");
    check(E(1, 2, 1, z), (std::exp(z) - 1.0) / z, "E_1,2");
    check(E(2, 1, 1, z), std::cosh(std::sqrt(z)), "E_2");
    check(E(2, 2, 1, z), std::sinh(std::sqrt(z)) / std::sqrt(z), "E_2,2");
    check(E(1, 1, 2, z), (1.0 + z) * std::exp(z), "E^2_1,1");
  }
  // gamma = 1 and beta = 1 reductions against an independent series
  for (double a : {0.3, 0.5, 0.8}) {
    for (cplx z : {cplx(-0.9), cplx(0.7, 0.4)}) {
      check(E(a, 1.0, 1.0, z), oracle::ml_series<50>(a, 1.0, 1.0, z, 400), "E_a");
      check(E(a, 0.7, 1.0, z), oracle::ml_series<50>(a, 0.7, 1.0, z, 400), "E_a,b");
    }
  }
  const double half = E(0.5, 1, 1, -1.0).real();
  const double ident = std::exp(1.0) * boost::math::erfc(1.0);
  if (!(std::abs(half - ident) < 1e-10)) fail(o, "E_1/2(-1) off by " + fmt(std::abs(half - ident)));
  if (o.pass) o.detail = "max relative error " + fmt(worst) + "; E_1/2(-1) off by " + fmt(std::abs(half - ident));
  return o;
}

Outcome transform_suite() {
  Outcome o;
  struct Pair {
    std::function<cplx(cplx)> F;
    std::function<double(double)> f;
    double rate;
  };
  const std::vector<Pair> pairs{
      {[](cplx s) { return 1.0 / (s + 1.0); }, [](double t) { return std::exp(-t); }, 1.0},
      {[](cplx s) { return 1.0 / (s * s); }, [](double t) { return t; }, 0.0},
      {[](cplx s) { return 1.0 / ((s + 1.0) * (s + 2.0)); }, [](double t) { return std::exp(-t) - std::exp(-2.0 * t); }, 2.0},
      {[](cplx s) { return std::pow(s, -1.5); }, [](double t) { return 2.0 * std::sqrt(t / std::numbers::pi); }, 0.0},
      {[](cplx s) { return std::pow(s, -0.5) / (std::sqrt(s) + 1.0); },
       [](double t) { return static_cast<double>(oracle::erfcx(std::sqrt(static_cast<oracle::ld>(t)))); }, 0.0}};
  double talbot = 0.0;
  double stehfest = 0.0;
  for (const auto& p : pairs) {
    const transforms::LaplaceFunction F{p.F};
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double want = p.f(t);
      const double err = std::abs(transforms::invert_laplace(F, t) - want) / std::max(1.0, std::abs(want));
      talbot = std::max(talbot, err);
      if (!(err < 1e-8)) fail(o, "Talbot off by " + fmt(err) + " at t=" + fmt(t));
      if (p.rate * t <= 1.0) {
        const auto c = transforms::invert_laplace_checked(F, t);
        stehfest = std::max(stehfest, c.relative_gap);
        if (!(c.relative_gap < 1e-5)) fail(o, "Stehfest gap " + fmt(c.relative_gap) + " at t=" + fmt(t));
      }
    }
  }
  double semigroup = 0.0;
  for (double mu : {0.25, 0.5, 1.0, 1.5}) {
    for (double nu : {0.25, 0.5, 1.0, 1.5}) {
      for (double t : {0.5, 1.0, 2.0}) {
        const double want = std::pow(t, mu + nu - 1.0) / boost::math::tgamma(mu + nu);
        const double err = std::abs(kernels::convolve_gs(mu, nu, t) - want);
        semigroup = std::max(semigroup, err);
        if (!(err < 1e-8)) fail(o, "G_mu * G_nu off by " + fmt(err));
      }
    }
  }
  if (o.pass) {
    o.detail = "Talbot " + fmt(talbot) + ", Stehfest gap " + fmt(stehfest) + ", semigroup " + fmt(semigroup);
  }
  return o;
}

Outcome mass_conservation() {
  Outcome o;
  double worst = 0.0;
  int runs = 0;
  for (double a : {0.5, 1.0}) {
    for (auto spec : {KernelSpec::caputo(a), KernelSpec::caputo_fabrizio(a), KernelSpec::atangana_baleanu(a),
                      KernelSpec::prabhakar(a, 0.8, 1.0, -1.0)}) {
      for (auto ic : {InitialCondition::delta(), InitialCondition::gaussian(1.0), InitialCondition::box(1.0)}) {
        const auto field = diffusion::solve(spec, ic, {0.1, 1.0, 5.0});
        for (std::size_t i = 0; i < field.times.size(); ++i) {
          const double err = std::abs(field.mass(i) - ic.fourier(0.0));
          worst = std::max(worst, err);
          ++runs;
          if (!(err < 1e-8)) fail(o, spec.describe() + " " + ic.describe() + " off by " + fmt(err));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " combinations, max error " + fmt(worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"verdict table", verdict_table},
      {"closed-form limits (1-alpha)/M", closed_form_limits},
      {"Caputo spectrum vs E_alpha", caputo_spectrum},
      {"initial-condition satisfaction", initial_condition},
      {"classical alpha = 1 limit", classical_limit},
      {"special functions", special_functions},
      {"transforms", transform_suite},
      {"mass conservation", mass_conservation}};
  bool all = true;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
  }
  return all ? 0 : 1;
}
