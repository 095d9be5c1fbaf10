#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "bandgap/dispersion.hpp"
#include "bandgap/quadrature.hpp"
#include "bandgap/spectral.hpp"

namespace bandgap {

/// Which part of the spectrum enters the k-integral.
///   BelowGap       : [0, k0]
///   AboveGapWindow : [k0, upper * k0], upper = 3/2 unless configured
enum class BandSelector { BelowGap, AboveGapWindow, Both };

struct QuadratureOptions {
  double rel_tol = 1e-8;
  std::size_t max_panels = 1'000'000;
  double abs_floor = 1e-30;
  double above_gap_upper = 1.5;  // upper end of the above-gap window, in units of k0

  bool operator==(const QuadratureOptions&) const = default;
};

struct BandWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Window of a single band in units of k0. Both is not a single window.
BandWindow band_window(BandSelector band, const QuadratureOptions& options);

/// Energy in reduced units: lengths in 1/k0, energies in |mu|^2 k0^3 (3D)
/// or |p_perp|^2 k0 (1D). `value` carries the symmetry sign.
struct EnergyResult {
  double value = 0.0;
  std::optional<double> below_gap;
  std::optional<double> above_gap;
  QuadratureResult quadrature;
  int symmetry_sign = 1;
  double k0_r = 0.0;
  bool three_d = true;
};

/// Same spectrum with k measured in k0 and frequencies in omega_a.
DispersionModel reduced_model(const DispersionModel& model, double omega_a);

/// Integral of W(k) cos(k r) over [lo, hi], in whatever units the model uses.
QuadratureResult band_integral_1d(const DispersionModel& model, double omega_a, double r, const BandWindow& k_range,
                                  const QuadratureOptions& options = {});

/// Integral of W(k) sin(k r) / k over [lo, hi].
QuadratureResult band_integral_3d_scalar(const DispersionModel& model, double omega_a, double r,
                                         const BandWindow& k_range, const QuadratureOptions& options = {});

/// Integral of W(k) a . T_k(r) . b over [lo, hi], T_k = mode_tensor(k, r, r_hat).
QuadratureResult band_integral_3d_tensor(const DispersionModel& model, double omega_a, double r,
                                         const Eigen::Vector3d& r_hat, const Eigen::Vector3d& a,
                                         const Eigen::Vector3d& b, const BandWindow& k_range,
                                         const QuadratureOptions& options = {});

/// +-2 |p|^2 Int W(k) cos(kr) dk, reduced by |p|^2 k0.
/// Throws InvalidEmitter for a 3D pair and ResonancePole if omega_a is not inside the gap.
EnergyResult delta_e_1d_numeric(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                                const QuadratureOptions& options = {});

/// +-(1/pi) mu_a . [Int W(k) (-lap delta + grad grad) sin(kr)/(kr) dk] . mu_b, reduced by |mu|^2 k0^3.
EnergyResult delta_e_3d_numeric(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                                const QuadratureOptions& options = {});

/// Either of the above, picked by the pair geometry.
EnergyResult delta_e_numeric(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                             const QuadratureOptions& options = {});

/// Excitation-transfer matrix element: the magnitude of the shift with the
/// symmetry sign stripped. Independent of pair.symmetry.
EnergyResult energy_transfer_element(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                                     const QuadratureOptions& options = {});

/// F = -dE/d(k0 r) over a sweep ordered by separation; positive is repulsive.
/// Throws TooFewSamples below 5 samples.
std::vector<ProfilePoint> force_profile(std::span<const EnergyResult> sweep);

}  // namespace bandgap
