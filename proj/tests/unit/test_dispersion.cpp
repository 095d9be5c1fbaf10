#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bandgap/dispersion.hpp"
#include "bandgap/errors.hpp"

using namespace bandgap;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ValidationError;
}

}  // namespace

TEST_CASE("reference stack band edges") {
  const CrystalParams crystal;
  const BandEdges edges = band_edges(crystal);
  // Independent high-precision evaluation of the closed form.
  CHECK(edges.omega_l == doctest::Approx(2.6161826e15).epsilon(1e-7));
  CHECK(edges.omega_u == doctest::Approx(5.2323652e15).epsilon(1e-7));
  // Quoted values carry three figures.
  CHECK(std::abs(edges.omega_l - 2.61e15) < 0.01e15);
  CHECK(std::abs(edges.omega_u - 5.23e15) < 0.01e15);
  CHECK(edges.width() > 0.0);
}

TEST_CASE("n = 3 puts the arccos argument at -1/2") {
  CHECK(band_edge_cosine(3.0) == -0.5);
  const CrystalParams crystal;
  const double expected = crystal.c / (4.0 * crystal.n * crystal.a) * (2.0 * std::numbers::pi / 3.0);
  CHECK(band_edges(crystal).omega_l == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("arccos argument stays in [-1, 1]") {
  for (double n = 1.001; n < 50.0; n *= 1.1) {
    const double arg = band_edge_cosine(n);
    CHECK(arg >= -1.0);
    CHECK(arg <= 1.0);
  }
}

TEST_CASE("effective speed is 8/9 c for the reference stack") {
  const CrystalParams crystal;
  const double v = effective_speed(band_edges(crystal), crystal.k0());
  CHECK(v / crystal.c == doctest::Approx(8.0 / 9.0).epsilon(1e-13));
  CHECK(std::abs(v / crystal.c - 0.89) < 0.01);
}

TEST_CASE("invalid crystals are rejected") {
  CHECK(kind_of([] { band_edges(CrystalParams{1.0, 2e-8}); }) == ErrorKind::InvalidCrystal);
  CHECK(kind_of([] { band_edges(CrystalParams{0.5, 2e-8}); }) == ErrorKind::InvalidCrystal);
  CHECK(kind_of([] { band_edges(CrystalParams{3.0, 0.0}); }) == ErrorKind::InvalidCrystal);
  CHECK(kind_of([] { band_edges(CrystalParams{3.0, -1e-8}); }) == ErrorKind::InvalidCrystal);
}

TEST_CASE("dispersion at reference points") {
  const DispersionModel m = make_dispersion(CrystalParams{});
  const double k0 = m.k0();
  const double wl = m.edges().omega_l;
  const double wu = m.edges().omega_u;

  CHECK(m.omega(0.0) == 0.0);
  CHECK(m.omega(k0) == doctest::Approx(wl).epsilon(1e-15));
  CHECK(m.omega(1.5 * k0) == doctest::Approx(wu + wl / 4.0).epsilon(1e-14));
  CHECK(m.omega(0.5 * k0) == doctest::Approx(0.75 * wl).epsilon(1e-15));
  CHECK(m.omega(k0 * (1.0 + 1e-12)) >= wu);
  CHECK(m.group_velocity(k0) == 0.0);
  CHECK(m.curvature() * k0 * k0 == doctest::Approx(wl).epsilon(1e-15));
  CHECK(m.branch(k0) == Branch::Below);
  CHECK(m.branch(1.01 * k0) == Branch::Above);
}

TEST_CASE("negative wavenumbers are rejected") {
  const DispersionModel m = make_dispersion(CrystalParams{});
  CHECK(kind_of([&] { m.omega(-1.0); }) == ErrorKind::NegativeWavenumber);
  CHECK(kind_of([&] { m.group_velocity(-1.0); }) == ErrorKind::NegativeWavenumber);
}

TEST_CASE("no wavenumber maps into the gap and the lower branch rises") {
  const DispersionModel m = make_dispersion(CrystalParams{});
  const double k0 = m.k0();
  double previous = -1.0;
  for (int i = 0; i <= 20000; ++i) {
    const double k = 2.0 * k0 * i / 20000.0;
    const double w = m.omega(k);
    CHECK_FALSE(m.edges().inside_gap(w));
    if (k <= k0) {
      CHECK(w > previous);
      CHECK(m.group_velocity(k) >= 0.0);
      CHECK(m.group_velocity(k) == doctest::Approx(2.0 * m.curvature() * (k0 - k)));
      previous = w;
    }
  }
}

TEST_CASE("scaling the lattice rescales edges and k0") {
  const CrystalParams base;
  for (double lambda : {0.5, 3.0, 17.0}) {
    CrystalParams scaled = base;
    scaled.a *= lambda;
    const BandEdges b = band_edges(base);
    const BandEdges s = band_edges(scaled);
    CHECK(s.omega_l * lambda == doctest::Approx(b.omega_l).epsilon(1e-14));
    CHECK(s.omega_u * lambda == doctest::Approx(b.omega_u).epsilon(1e-14));
    CHECK(scaled.k0() * lambda == doctest::Approx(base.k0()).epsilon(1e-14));
  }
}

TEST_CASE("unit speed of light gives reduced-unit edges") {
  CrystalParams crystal{3.0, 0.25, 1.0};
  const BandEdges e = band_edges(crystal);
  CHECK(e.omega_l == doctest::Approx(1.0 / 3.0 * 2.0 * std::numbers::pi / 3.0));
  CHECK(crystal.period() == doctest::Approx(2.0));
  CHECK(crystal.vacuum_gap() == doctest::Approx(1.5));
}
