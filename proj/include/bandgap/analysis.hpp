#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bandgap/asymptotics.hpp"
#include "bandgap/dispersion.hpp"
#include "bandgap/interaction.hpp"
#include "bandgap/quadrature.hpp"
#include "bandgap/spectral.hpp"

namespace bandgap {

/// One physical configuration: crystal, emitters, quadrature settings.
/// Defaults are the reference stack (n = 3, a = 20 nm) with omega_a just above
/// the lower edge and dipoles perpendicular to the separation axis.
struct Scenario {
  CrystalParams crystal;
  double omega_a = 2.65e15;
  int dimension = 3;
  Symmetry symmetry = Symmetry::Symmetric;
  Eigen::Vector3d dipole{0.0, 0.0, 1.0};
  Eigen::Vector3d axis{1.0, 0.0, 0.0};
  double p_perp_sq = 1.0;
  BandSelector band = BandSelector::Both;
  QuadratureOptions quadrature;

  DispersionModel model() const { return make_dispersion(crystal); }
  double k0() const { return crystal.k0(); }

  /// Pair at separation r (meters).
  EmitterPair pair_at(double r) const;
};

struct EnvelopeFit {
  double amplitude = 0.0;  // envelope = amplitude * r^exponent
  double exponent = 0.0;
  double period = 0.0;
  double phase = 0.0;      // signal ~ envelope * sin(2 pi r / period + phase)
  double residual = 0.0;   // RMS of the log-envelope residuals
  std::size_t peaks = 0;
};

/// Envelope of an oscillating profile from its per-half-period peak magnitudes.
/// Peaks are located by parabolic refinement around the largest sample between
/// consecutive zero crossings, then log|peak| is regressed on log r. With
/// `fixed_exponent` only the amplitude is fitted.
/// Throws InsufficientCoverage unless the samples span at least 10 periods at
/// 8 or more samples per period.
EnvelopeFit fit_envelope(std::span<const ProfilePoint> samples, std::optional<double> fixed_exponent = {});

struct RatioWindow {
  double rho_min = 100.0;
  double rho_max = 300.0;
  std::size_t points = 801;

  bool operator==(const RatioWindow&) const = default;
};

struct BandRatio {
  double ratio = 0.0;
  double rms_below = 0.0;
  double rms_above = 0.0;
  bool near_lower_edge = false;  // omega_a - omega_l < 0.1 gap width
  bool converged = true;
};

/// RMS of the below-gap energy over the window divided by the RMS of the
/// above-gap window energy, for the scenario's dimensionality.
BandRatio band_ratio(const Scenario& scenario, const RatioWindow& window = {});

struct Crossover {
  double r = 0.0;               // meters
  double r_reduced = 0.0;       // units of c / omega_a
  double seed_reduced = 0.0;    // closed-form estimate, units of c / omega_a
  double gamma3 = 0.0;
  double alpha = 0.0;
};

/// Smallest separation beyond which the vacuum 3D far-zone envelope exceeds the
/// bandgap one. `omega_l_override` replaces the computed lower edge in alpha.
/// Throws NoCrossover when the envelopes do not cross in (0.1, 1e5) c/omega_a.
Crossover crossover_distance(const Scenario& scenario, std::optional<double> omega_l_override = {});

struct SweepRow {
  double k0_r = 0.0;
  double e_numeric = 0.0;
  double e_asymptotic = 0.0;
  double e_freespace = 0.0;
  double force = 0.0;
  double e_below_gap = 0.0;
  double e_above_gap = 0.0;
  double quad_error = 0.0;
  bool converged = true;
  std::string error;  // empty on success
};

struct SweepTable {
  int dimension = 3;
  std::vector<SweepRow> rows;

  bool all_converged() const;
};

struct SweepGrid {
  double rho_min = 100.0;  // k0 r
  double rho_max = 1000.0;
  std::size_t points = 200;

  double at(std::size_t i) const;
};

/// Numeric, far-zone and vacuum energies plus the force over a uniform k0 r grid.
/// Rows are evaluated in parallel and returned in grid order. A row that throws
/// keeps its message in `error`; only a sweep where every row fails throws.
/// The force column needs 5 or more rows and is NaN otherwise.
SweepTable run_sweep(const Scenario& scenario, const SweepGrid& grid);

}  // namespace bandgap
