#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <string>
#include <vector>

#include "fracdiff/errors.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/transforms.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using transforms::InversionMethod;
using transforms::LaplaceFunction;
using transforms::LimitStatus;
using cplx = std::complex<double>;

namespace {

struct Pair {
  std::string name;
  LaplaceFunction F;
  std::function<double(double)> f;
  double f0;
  double rate = 0.0;  // fastest exponential rate in f; 0 for pure power laws
};

double e_half(double x) { return static_cast<double>(oracle::erfcx(static_cast<oracle::ld>(-x))); }

std::vector<Pair> known_pairs() {
  std::vector<Pair> p;
  p.push_back({"1/(s+1)", {[](cplx s) { return 1.0 / (s + 1.0); }}, [](double t) { return std::exp(-t); }, 1.0, 1.0});
  p.push_back({"1/s^2", {[](cplx s) { return 1.0 / (s * s); }}, [](double t) { return t; }, 0.0});
  p.push_back({"1/s", {[](cplx s) { return 1.0 / s; }}, [](double) { return 1.0; }, 1.0});
  p.push_back({"1/(s+1)^2", {[](cplx s) { return 1.0 / ((s + 1.0) * (s + 1.0)); }},
               [](double t) { return t * std::exp(-t); }, 0.0, 1.0});
  p.push_back({"1/((s+1)(s+2))", {[](cplx s) { return 1.0 / ((s + 1.0) * (s + 2.0)); }},
               [](double t) { return std::exp(-t) - std::exp(-2.0 * t); }, 0.0, 2.0});
  p.push_back({"s^-1.5", {[](cplx s) { return std::pow(s, -1.5); }},
               [](double t) { return 2.0 * std::sqrt(t / std::numbers::pi); }, 0.0});
  p.push_back({"1/(s(s+3))", {[](cplx s) { return 1.0 / (s * (s + 3.0)); }},
               [](double t) { return (1.0 - std::exp(-3.0 * t)) / 3.0; }, 0.0, 3.0});
  // s^{-1/2}/(s^{1/2}+1) <-> E_1/2(-t^1/2) = erfcx(t^1/2)
  p.push_back({"s^-1/2/(s^1/2+1)", {[](cplx s) { return std::pow(s, -0.5) / (std::sqrt(s) + 1.0); }},
               [](double t) { return e_half(-std::sqrt(t)); }, 1.0});
  return p;
}

}  // namespace

TEST_SUITE("inversion") {
  TEST_CASE("examples") {
    const LaplaceFunction exp_pair{[](cplx s) { return 1.0 / (s + 1.0); }};
    CHECK(transforms::invert_laplace(exp_pair, 1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-9));
    const LaplaceFunction ramp{[](cplx s) { return 1.0 / (s * s); }};
    CHECK(transforms::invert_laplace(ramp, 2.0) == doctest::Approx(2.0).epsilon(1e-9));
    const LaplaceFunction ml{[](cplx s) { return std::pow(s, -0.5) / (std::pow(s, 0.5) + 1.0); }};
    const double want = std::exp(1.0) * boost::math::erfc(1.0);
    CHECK(want == doctest::Approx(0.4275835761558070).epsilon(1e-14));
    CHECK(oracle::rel_err(transforms::invert_laplace(ml, 1.0), want) < 1e-8);
  }

  TEST_CASE("Talbot reproduces known pairs to 1e-8") {
    for (const auto& pair : known_pairs()) {
      for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        const double want = pair.f(t);
        const double got = transforms::invert_laplace(pair.F, t);
        CAPTURE(pair.name);
        CAPTURE(t);
        CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
      }
    }
  }

  // Order 14 resolves an exponential only while rate * t stays below about 1.
  TEST_CASE("Gaver-Stehfest agrees with Talbot to 1e-5") {
    for (const auto& pair : known_pairs()) {
      for (double t : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
        if (pair.rate * t > 1.0) {
          continue;
        }
        const auto c = transforms::invert_laplace_checked(pair.F, t);
        CAPTURE(pair.name);
        CAPTURE(t);
        CHECK(c.relative_gap < 1e-5);
        CHECK_FALSE(c.disagreement);
        CHECK(std::abs(c.stehfest - pair.f(t)) <= 1e-5 * std::max(1.0, std::abs(pair.f(t))));
      }
    }
  }

  TEST_CASE("the cross-check flags what order 14 cannot resolve") {
    const LaplaceFunction decay{[](cplx s) { return 1.0 / (s + 1.0); }};
    CHECK(transforms::invert_laplace_checked(decay, 5.0).disagreement);
  }

  TEST_CASE("oscillating original is flagged by the cross-check") {
    const LaplaceFunction sine{[](cplx s) { return 1.0 / (s * s + 1.0); }};
    const auto c = transforms::invert_laplace_checked(sine, 10.0);
    CHECK(std::abs(c.talbot - std::sin(10.0)) < 1e-8);
    CHECK(c.disagreement);
  }

  TEST_CASE("CF and AB kernels round-trip through their transforms") {
    for (double a : {0.3, 0.5, 0.8}) {
      for (auto k : {kernels::KernelSpec::caputo_fabrizio(a), kernels::KernelSpec::atangana_baleanu(a)}) {
        const LaplaceFunction F{[k](cplx s) { return kernels::kernel_laplace(k, s); }};
        for (double t : {0.5, 1.0, 2.0}) {
          CAPTURE(k.describe());
          CAPTURE(t);
          CHECK(std::abs(transforms::invert_laplace(F, t) - kernels::kernel_time(k, t)) < 1e-6);
        }
      }
    }
  }

  TEST_CASE("failures") {
    const LaplaceFunction bad{[](cplx) -> cplx { throw DomainError("no"); }};
    CHECK_THROWS_AS(transforms::invert_laplace(bad, 1.0), InversionFailure);
    const LaplaceFunction nan{[](cplx) { return cplx(std::nan("")); }};
    CHECK_THROWS_AS(transforms::invert_laplace(nan, 1.0), InversionFailure);
    const LaplaceFunction ok{[](cplx s) { return 1.0 / s; }};
    CHECK_THROWS_AS(transforms::invert_laplace(ok, 0.0), DomainError);
  }
}

TEST_SUITE("initial value limit") {
  TEST_CASE("examples") {
    const auto a = transforms::initial_value_limit({[](cplx s) { return 1.0 / (s + 1.0); }});
    CHECK(a.converged);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-10));

    const auto cf = kernels::KernelSpec::caputo_fabrizio(0.5);
    const auto b = transforms::initial_value_limit({[&](cplx s) { return 1.0 / (s * s * kernels::kernel_laplace(cf, s)); }});
    CHECK(b.converged);
    CHECK(b.value == doctest::Approx(0.5).epsilon(1e-10));

    const auto c = transforms::initial_value_limit({[](cplx s) { return std::pow(s, -1.5); }});
    CHECK(c.converged);
    CHECK(std::abs(c.value) < 1e-8);
  }

  TEST_CASE("agrees with f(0+) for every known pair") {
    for (const auto& pair : known_pairs()) {
      const auto est = transforms::initial_value_limit(pair.F);
      CAPTURE(pair.name);
      CHECK(est.converged);
      CHECK(est.status == LimitStatus::Converged);
      CHECK(std::abs(est.value - pair.f0) < 1e-6);
      CHECK(est.extrapolation_residual < 1e-8);
      CHECK(est.samples.size() == 8);
      CHECK(est.samples.front().s == 1e2);
    }
  }

  TEST_CASE("growth is reported as divergence") {
    for (double p : {0.5, 0.05, 1.0}) {
      const auto est = transforms::limit_at_infinity([p](double s) { return std::pow(s, p); });
      CAPTURE(p);
      CHECK(est.status == LimitStatus::Diverged);
      CHECK_FALSE(est.converged);
      CHECK(est.value == std::numeric_limits<double>::infinity());
    }
    const auto neg = transforms::limit_at_infinity([](double s) { return -std::pow(s, 0.3); });
    CHECK(neg.status == LimitStatus::Diverged);
    CHECK(neg.value == -std::numeric_limits<double>::infinity());
  }

  TEST_CASE("logarithmic growth is never reported as converged") {
    const auto est = transforms::limit_at_infinity([](double s) { return std::log(s); });
    CHECK_FALSE(est.converged);
    CHECK(est.status != LimitStatus::Converged);
  }

  TEST_CASE("samples that never settle are reported as oscillating") {
    const auto est = transforms::limit_at_infinity([](double s) { return std::cos(std::numbers::pi * std::log10(s)); });
    CHECK(est.status == LimitStatus::Oscillating);
    CHECK_FALSE(est.converged);
  }

  TEST_CASE("converged implies residual below tolerance") {
    for (double p : {-0.1, -0.5, -1.0, -2.0}) {
      const auto est = transforms::limit_at_infinity([p](double s) { return 3.0 + std::pow(s, p); });
      if (est.converged) {
        CHECK(est.extrapolation_residual < 1e-8);
      }
      CHECK(std::abs(est.value - 3.0) < 1e-6);
    }
  }

  TEST_CASE("bad options") {
    transforms::LimitOptions o;
    o.points = 2;
    CHECK_THROWS_AS(transforms::limit_at_infinity([](double) { return 1.0; }, o), DomainError);
  }
}

TEST_SUITE("extrapolation") {
  TEST_CASE("partial sums of the alternating harmonic series") {
    std::vector<double> sums;
    double s = 0.0;
    for (int k = 1; k <= 14; ++k) {
      s += (k % 2 ? 1.0 : -1.0) / k;
      sums.push_back(s);
    }
    const auto ex = transforms::extrapolate_sequence(sums);
    CHECK(std::abs(ex.value - std::numbers::ln2) < 1e-9);
    CHECK(std::abs(sums.back() - std::numbers::ln2) > 1e-2);
  }

  TEST_CASE("geometric tails are removed") {
    std::vector<double> seq;
    for (int j = 0; j < 8; ++j) {
      seq.push_back(2.0 + 0.7 * std::pow(0.3, j) - 0.2 * std::pow(0.05, j));
    }
    CHECK(transforms::extrapolate_sequence(seq).value == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("degenerate input") {
    CHECK_THROWS_AS(transforms::extrapolate_sequence({}), DomainError);
    const std::vector<double> one{4.0};
    CHECK(transforms::extrapolate_sequence(one).value == 4.0);
    const std::vector<double> flat(6, 1.5);
    CHECK(transforms::extrapolate_sequence(flat).value == 1.5);
  }
}
