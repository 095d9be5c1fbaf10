#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bandgap/analysis.hpp"
#include "bandgap/errors.hpp"

using namespace bandgap;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;
}

std::vector<ProfilePoint> synthetic(double amplitude, double exponent, double period, double phase, double lo,
                                    double hi, int n) {
  std::vector<ProfilePoint> out;
  for (int i = 0; i < n; ++i) {
    const double r = lo + (hi - lo) * i / (n - 1);
    out.push_back({r, amplitude * std::pow(r, exponent) * std::sin(2.0 * kPi * r / period + phase)});
  }
  return out;
}

double rms(const std::vector<SweepRow>& rows, double SweepRow::*column) {
  double s = 0.0;
  for (const SweepRow& r : rows) {
    s += (r.*column) * (r.*column);
  }
  return std::sqrt(s / rows.size());
}

}  // namespace

TEST_CASE("envelope fit recovers synthetic laws") {
  for (double exponent : {-2.0, -1.0, 0.0}) {
    const auto s = synthetic(3.5, exponent, 2.0 * kPi, 0.4, 100.0, 1000.0, 4000);
    const EnvelopeFit f = fit_envelope(s);
    CAPTURE(exponent);
    CHECK(f.exponent == doctest::Approx(exponent).epsilon(0.01).scale(1.0));
    CHECK(f.amplitude == doctest::Approx(3.5).epsilon(0.02));
    CHECK(f.period == doctest::Approx(2.0 * kPi).epsilon(1e-4));
    CHECK(f.residual < 1e-3);
    CHECK(f.peaks > 250);
  }
}

TEST_CASE("envelope fit in physical length units") {
  // Separations in meters: period 0.16 um, 1/r^2 envelope.
  const double period = 1.6e-7;
  const auto s = synthetic(2e-14, -2.0, period, 0.0, 3e-6, 3e-5, 3000);
  const EnvelopeFit f = fit_envelope(s);
  CHECK(f.exponent == doctest::Approx(-2.0).epsilon(0.01));
  CHECK(f.period == doctest::Approx(period).epsilon(1e-4));
  CHECK(f.amplitude == doctest::Approx(2e-14).epsilon(0.05));
}

TEST_CASE("fixed exponent fits only the amplitude") {
  const auto s = synthetic(7.0, -2.0, 2.0 * kPi, 1.0, 200.0, 1000.0, 1800);
  const EnvelopeFit f = fit_envelope(s, -2.0);
  CHECK(f.exponent == -2.0);
  CHECK(f.amplitude == doctest::Approx(7.0).epsilon(0.01));
}

TEST_CASE("phase is recovered") {
  for (double phase : {-2.5, -0.3, 0.0, 1.2, 3.0}) {
    const auto s = synthetic(1.0, -1.0, 2.0 * kPi, phase, 100.0, 400.0, 3000);
    const EnvelopeFit f = fit_envelope(s);
    CAPTURE(phase);
    const double diff = std::remainder(f.phase - phase, 2.0 * kPi);
    CHECK(std::abs(diff) < 0.02);
  }
}

TEST_CASE("coverage requirements") {
  // Three periods only.
  CHECK(kind_of([] { fit_envelope(synthetic(1.0, -2.0, 2.0 * kPi, 0.0, 100.0, 120.0, 400)); }) ==
        ErrorKind::InsufficientCoverage);
  // Many periods but 4 samples per period.
  CHECK(kind_of([] { fit_envelope(synthetic(1.0, -2.0, 2.0 * kPi, 0.3, 100.0, 1000.0, 573)); }) ==
        ErrorKind::InsufficientCoverage);
  CHECK(kind_of([] { fit_envelope(std::vector<ProfilePoint>{{1, 1}, {2, -1}}); }) ==
        ErrorKind::InsufficientCoverage);
  auto s = synthetic(1.0, -2.0, 2.0 * kPi, 0.0, 100.0, 1000.0, 4000);
  std::swap(s[10], s[11]);
  CHECK(kind_of([&] { fit_envelope(s); }) == ErrorKind::NonMonotonicAbscissa);
}

TEST_CASE("band ratio at the reference emitter") {
  Scenario s;
  const BandRatio base = band_ratio(s);
  CHECK(base.ratio > 10.0);
  CHECK(base.near_lower_edge);
  CHECK(base.converged);

  // Independent of the dipole length.
  Scenario scaled = s;
  scaled.dipole *= 4.0;
  CHECK(band_ratio(scaled).ratio == doctest::Approx(base.ratio).epsilon(1e-10));

  // Moving toward the edge raises the ratio.
  const double omega_l = s.model().edges().omega_l;
  Scenario closer = s;
  closer.omega_a = omega_l + 0.5 * (s.omega_a - omega_l);
  CHECK(band_ratio(closer).ratio > base.ratio);

  Scenario guide = s;
  guide.dimension = 1;
  CHECK(band_ratio(guide).ratio > 10.0);
}

TEST_CASE("band ratio window checks") {
  Scenario s;
  CHECK(kind_of([&] { band_ratio(s, RatioWindow{300.0, 100.0, 10}); }) == ErrorKind::InvalidInterval);
  CHECK(kind_of([&] { band_ratio(s, RatioWindow{100.0, 300.0, 1}); }) == ErrorKind::InvalidInterval);
  CHECK(kind_of([&] { band_ratio(s, RatioWindow{0.0, 300.0, 10}); }) == ErrorKind::InvalidInterval);
}

TEST_CASE("crossover distance") {
  Scenario s;
  const Crossover full = crossover_distance(s);
  CHECK(full.r_reduced == doctest::Approx(55.549).epsilon(1e-4));
  CHECK(full.alpha == doctest::Approx(0.98723877).epsilon(1e-7));
  CHECK(full.r == doctest::Approx(full.r_reduced * 299792458.0 / s.omega_a).epsilon(1e-12));
  // The root is the closed-form seed to within the bisection tolerance.
  CHECK(full.r_reduced == doctest::Approx(full.seed_reduced).epsilon(1e-9));

  const Crossover quoted = crossover_distance(s, 2.61e15);
  CHECK(quoted.r_reduced == doctest::Approx(46.984).epsilon(1e-4));
  CHECK(quoted.r_reduced > 30.0);
  CHECK(quoted.r_reduced < 65.0);

  // Far from the edge the bandgap envelope is weak and the vacuum wins early.
  CHECK(crossover_distance(s, 1e14).r_reduced < 1.0);

  // Linear in the band constant.
  const Crossover a = crossover_distance(s, 2.3e15);
  const Crossover b = crossover_distance(s, 2.5e15);
  CHECK(a.r_reduced / b.r_reduced == doctest::Approx(a.gamma3 / b.gamma3).epsilon(1e-8));
}

TEST_CASE("crossover preconditions") {
  Scenario longitudinal;
  longitudinal.dipole = longitudinal.axis;
  CHECK(kind_of([&] { crossover_distance(longitudinal); }) == ErrorKind::NoCrossover);
  Scenario guide;
  guide.dimension = 1;
  CHECK(kind_of([&] { crossover_distance(guide); }) == ErrorKind::ValidationError);
}

TEST_CASE("single-row sweep is a single energy") {
  Scenario s;
  const SweepTable t = run_sweep(s, SweepGrid{250.0, 250.0, 1});
  REQUIRE(t.rows.size() == 1);
  const SweepRow& row = t.rows.front();
  const EnergyResult e = delta_e_numeric(s.pair_at(250.0 / s.k0()), s.model(), BandSelector::Both, s.quadrature);
  CHECK(row.k0_r == 250.0);
  CHECK(row.e_numeric == doctest::Approx(e.value).epsilon(1e-12));
  CHECK(std::isnan(row.force));
  CHECK(row.converged);
  CHECK(row.error.empty());
}

TEST_CASE("sweep rows are ordered and deterministic") {
  Scenario s;
  s.dimension = 1;
  const SweepGrid g{100.0, 160.0, 61};
  const SweepTable a = run_sweep(s, g);
  const SweepTable b = run_sweep(s, g);
  REQUIRE(a.rows.size() == 61);
  CHECK(a.dimension == 1);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].k0_r == doctest::Approx(100.0 + i));
    if (i > 0) {
      CHECK(a.rows[i].k0_r > a.rows[i - 1].k0_r);
    }
    CHECK(a.rows[i].e_numeric == b.rows[i].e_numeric);
    CHECK(a.rows[i].force == b.rows[i].force);
    CHECK(a.rows[i].e_below_gap + a.rows[i].e_above_gap == doctest::Approx(a.rows[i].e_numeric));
    CHECK(std::isfinite(a.rows[i].force));
  }
  CHECK(a.all_converged());
}

TEST_CASE("band selection picks the numeric column") {
  Scenario s;
  s.band = BandSelector::BelowGap;
  const SweepTable t = run_sweep(s, SweepGrid{300.0, 310.0, 6});
  for (const SweepRow& r : t.rows) {
    CHECK(r.e_numeric == r.e_below_gap);
  }
}

TEST_CASE("far-zone form tracks the numeric energy near the edge") {
  // Measured at the reference emitter: the RMS ratio sits near 0.98 in 3D.
  Scenario s;
  s.band = BandSelector::BelowGap;
  const SweepTable t = run_sweep(s, SweepGrid{800.0, 1000.0, 400});
  const double ratio = rms(t.rows, &SweepRow::e_numeric) / rms(t.rows, &SweepRow::e_asymptotic);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sweep failures") {
  Scenario s;
  CHECK(kind_of([&] { run_sweep(s, SweepGrid{100.0, 50.0, 10}); }) == ErrorKind::ValidationError);
  CHECK(kind_of([&] { run_sweep(s, SweepGrid{100.0, 200.0, 0}); }) == ErrorKind::ValidationError);
  Scenario outside = s;
  outside.omega_a = 2.0e15;
  // Every row fails (alpha > 1 has no far-zone constant), so the sweep throws.
  CHECK(kind_of([&] { run_sweep(outside, SweepGrid{100.0, 200.0, 5}); }) == ErrorKind::EdgeResonance);
}
