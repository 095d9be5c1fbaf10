#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bandgap/errors.hpp"
#include "bandgap/quadrature.hpp"
#include "bandgap/selfcheck.hpp"

using namespace bandgap;

namespace {

OscillatorySpec spec_for(Oscillator kind, double rate, double lo = 0.0, double hi = 1.0) {
  OscillatorySpec s;
  s.kind = kind;
  s.rate = rate;
  s.k_lo = lo;
  s.k_hi = hi;
  return s;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Smooth weight with structure near the right end, like the band weights.
double peaked(double k) { return k * k / (1.05 - k); }

}  // namespace

TEST_CASE("analytic oscillatory integrals") {
  for (const QuadratureOracle& o : quadrature_oracles()) {
    for (double rho : {1.0, 10.0, 100.0, 1e4}) {
      CAPTURE(o.name);
      CAPTURE(rho);
      OscillatorySpec s = spec_for(o.cosine ? Oscillator::Cosine : Oscillator::Sine, rho);
      s.rel_tol = 1e-10;
      const QuadratureResult q = integrate_oscillatory(o.weight, s);
      CHECK(q.converged);
      CHECK(rel(q.value, o.exact(rho)) <= (rho > 100.0 ? 1e-8 : 1e-10));
    }
  }
}

TEST_CASE("k cos(kr) matches its closed form on a physical interval") {
  // Interval [0, k0] with k0 = 2e7 and r chosen so that k0 r = 100.
  const double k0 = 2e7;
  const double r = 100.0 / k0;
  OscillatorySpec s = spec_for(Oscillator::Cosine, r, 0.0, k0);
  s.rel_tol = 1e-11;
  const double exact = (std::cos(k0 * r) - 1.0) / (r * r) + k0 * std::sin(k0 * r) / r;
  CHECK(rel(integrate_oscillatory([](double k) { return k; }, s).value, exact) < 1e-10);
}

TEST_CASE("convergence flag is consistent with the estimate") {
  for (double rho : {3.0, 80.0, 2500.0}) {
    const OscillatorySpec s = spec_for(Oscillator::Sine, rho);
    const QuadratureResult q = integrate_oscillatory(peaked, s);
    CHECK(q.abs_error_estimate >= 0.0);
    REQUIRE(q.converged);
    CHECK(q.abs_error_estimate <= s.rel_tol * std::abs(q.value) + s.abs_floor + q.roundoff_floor);
  }
}

TEST_CASE("tightening the tolerance never raises the estimate") {
  for (double rho : {5.0, 300.0}) {
    double previous = INFINITY;
    for (double tol = 1e-3; tol >= 1e-13; tol /= 2.0) {
      OscillatorySpec s = spec_for(Oscillator::Cosine, rho);
      s.rel_tol = tol;
      const QuadratureResult q = integrate_oscillatory(peaked, s);
      CHECK(q.abs_error_estimate <= previous);
      previous = q.abs_error_estimate;
    }
  }
}

TEST_CASE("panel refinement converges at high order") {
  // A few wide panels of a fast oscillation leave a visible error; the
  // 21-point rule is exact to degree 31, so each doubling gains many digits
  // until rounding takes over.
  const double rate = 120.0;
  const OscillatorySpec s = spec_for(Oscillator::Cosine, rate);
  const auto f = [](double k) { return std::exp(3.0 * k); };
  const double exact = (std::exp(3.0) * (3.0 * std::cos(rate) + rate * std::sin(rate)) - 3.0) / (9.0 + rate * rate);
  auto error = [&](std::size_t n) { return std::abs(integrate_fixed(f, s, n).value - exact); };
  CHECK(error(2) > 1e-6);
  CHECK(error(2) / error(4) > std::pow(2.0, 16.0));
  CHECK(error(3) / error(6) > std::pow(2.0, 16.0));
  CHECK(error(12) < 1e-14);
}

TEST_CASE("integration is linear") {
  const auto g = [](double k) { return std::exp(-k) + 0.3; };
  for (double rho : {2.0, 150.0}) {
    const OscillatorySpec s = spec_for(Oscillator::Sine, rho);
    const QuadratureResult qf = integrate_oscillatory(peaked, s);
    const QuadratureResult qg = integrate_oscillatory(g, s);
    const QuadratureResult qc = integrate_oscillatory([&](double k) { return 2.5 * peaked(k) - 4.0 * g(k); }, s);
    const double budget =
        2.0 * (2.5 * qf.abs_error_estimate + 4.0 * qg.abs_error_estimate + qc.abs_error_estimate);
    CHECK(std::abs(qc.value - (2.5 * qf.value - 4.0 * qg.value)) <= budget);
  }
}

TEST_CASE("results are deterministic") {
  const OscillatorySpec s = spec_for(Oscillator::Cosine, 777.0);
  const QuadratureResult a = integrate_oscillatory(peaked, s);
  const QuadratureResult b = integrate_oscillatory(peaked, s);
  CHECK(a.value == b.value);
  CHECK(a.abs_error_estimate == b.abs_error_estimate);
  CHECK(a.panels_used == b.panels_used);
}

TEST_CASE("half-period partition") {
  CHECK(half_period_panels(spec_for(Oscillator::Cosine, 1.0)) == 1);
  CHECK(half_period_panels(spec_for(Oscillator::Cosine, 6.0)) == 1);
  CHECK(half_period_panels(spec_for(Oscillator::Cosine, 100.0)) == 32);
  CHECK(half_period_panels(spec_for(Oscillator::Cosine, 10.0 * std::numbers::pi)) == 10);
  CHECK(half_period_panels(spec_for(Oscillator::Cosine, 1e4)) == 3184);
  // Without oscillation the integral is a plain adaptive one.
  const QuadratureResult q = integrate_oscillatory([](double k) { return k * k; }, spec_for(Oscillator::Cosine, 0.0));
  CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("budget exhaustion is reported, not thrown") {
  OscillatorySpec s = spec_for(Oscillator::Cosine, 3.0);
  s.max_panels = 1;
  s.rel_tol = 1e-12;
  const auto rough = [](double k) { return std::sqrt(k); };
  const QuadratureResult q = integrate_oscillatory(rough, s);
  CHECK_FALSE(q.converged);
  CHECK(q.panels_used == 1);
  CHECK(std::isfinite(q.value));
}

TEST_CASE("invalid specifications") {
  auto kind = [](const OscillatorySpec& s) {
    try {
      integrate_oscillatory([](double) { return 1.0; }, s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  CHECK(kind(spec_for(Oscillator::Sine, 1.0, 1.0, 1.0)) == ErrorKind::InvalidInterval);
  CHECK(kind(spec_for(Oscillator::Sine, 1.0, 2.0, 1.0)) == ErrorKind::InvalidInterval);
  CHECK(kind(spec_for(Oscillator::Sine, -1.0)) == ErrorKind::InvalidInterval);
  OscillatorySpec loose = spec_for(Oscillator::Sine, 1.0);
  loose.rel_tol = 0.1;
  CHECK(kind(loose) == ErrorKind::InvalidInterval);
  loose.rel_tol = 0.0;
  CHECK(kind(loose) == ErrorKind::InvalidInterval);
}

TEST_CASE("profile derivative of r^2") {
  std::vector<ProfilePoint> samples;
  for (int i = 0; i <= 200; ++i) {
    const double r = 1.0 + 1e-3 * i;
    samples.push_back({r, r * r});
  }
  const auto d = differentiate_profile(samples);
  REQUIRE(d.size() == samples.size());
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    CHECK(d[i].r == samples[i].r);
    CHECK(rel(d[i].value, 2.0 * d[i].r) < 1e-6);
  }
  CHECK(rel(d.front().value, 2.0) < 1e-6);
  CHECK(rel(d.back().value, 2.0 * d.back().r) < 1e-6);
}

TEST_CASE("profile derivative of sin is second order") {
  auto max_error = [](double h) {
    std::vector<ProfilePoint> samples;
    for (double r = 10.0; r <= 20.0 + 1e-12; r += h) {
      samples.push_back({r, std::sin(r)});
    }
    double worst = 0.0;
    for (const ProfilePoint& p : differentiate_profile(samples)) {
      worst = std::max(worst, std::abs(p.value - std::cos(p.r)));
    }
    return worst;
  };
  const double coarse = max_error(0.02);
  const double fine = max_error(0.01);
  CHECK(coarse < 0.02 * 0.02);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("flat profile has zero derivative") {
  std::vector<ProfilePoint> samples;
  for (int i = 0; i < 9; ++i) {
    samples.push_back({0.1 + 0.37 * i + 0.01 * (i % 2), 3.7});
  }
  for (const ProfilePoint& p : differentiate_profile(samples)) {
    CHECK(p.value == 0.0);
  }
}

TEST_CASE("profile preconditions") {
  std::vector<ProfilePoint> four{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  try {
    differentiate_profile(four);
    FAIL("expected TooFewSamples");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewSamples);
  }
  std::vector<ProfilePoint> unordered{{0, 0}, {1, 1}, {1, 2}, {3, 3}, {4, 4}};
  try {
    differentiate_profile(unordered);
    FAIL("expected NonMonotonicAbscissa");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMonotonicAbscissa);
  }
}
