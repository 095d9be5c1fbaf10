#pragma once

#include "bandgap/spectral.hpp"

namespace bandgap {

/// Far-zone amplitudes of the band integrals, parameterized by alpha = omega_l / omega_a.
struct AsymptoticConstants {
  double gamma1 = 0.0;
  double gamma3 = 0.0;
  double alpha = 0.0;
};

/// Both constants diverge as alpha -> 1 (transition on the band edge).
inline constexpr double kEdgeGuard = 1e-6;

/// Separations below this k0 r are flagged as outside the far zone.
inline constexpr double kFarZoneThreshold = 20.0;

/// 2 alpha / (1 - alpha^2) + sqrt(alpha / (1 + alpha)).
/// Throws EdgeResonance when 1 - alpha < kEdgeGuard, ValidationError for alpha < 0.
double gamma3(double alpha);

/// 2 (alpha / (1 - alpha^2) + 1).
double gamma1(double alpha);

AsymptoticConstants asymptotic_constants(double alpha);

/// alpha for a transition frequency and band edges.
AsymptoticConstants asymptotic_constants(const BandEdges& edges, double omega_a);

struct FarZoneValue {
  double value = 0.0;
  bool far_zone = true;  // false when k0 r < kFarZoneThreshold
};

/// I_3D ~ -Gamma_3 cos(k0 r) / (k0 r).
FarZoneValue i3d_asymptotic(const AsymptoticConstants& constants, double k0, double r);

/// I_1D ~ Gamma_1 sin(k0 r) / r  (per unit length).
FarZoneValue i1d_asymptotic(const AsymptoticConstants& constants, double k0, double r);

// Energies below are in the same reduced units as EnergyResult: |mu|^2 k0^3 in
// 3D, |p|^2 k0 in 1D. The upper sign of each form belongs to the symmetric state.

/// -+(Gamma_3/pi) mu_a.(delta - r_hat r_hat).mu_b cos(k0 r)/(k0 r)^2.
double delta_e_3d_asymptotic(const EmitterPair& pair, const AsymptoticConstants& constants, double k0);

/// +-2 Gamma_1 sin(k0 r)/(k0 r).
double delta_e_1d_asymptotic(const EmitterPair& pair, const AsymptoticConstants& constants, double k0);

/// Vacuum far zone: -+(omega_a/c)^3 mu_a.(delta - r_hat r_hat).mu_b cos(q)/q, q = omega_a r / c.
double delta_e_3d_free_space(const EmitterPair& pair, double k0, double c);

/// Vacuum 1D: +-2 pi |p|^2 (omega_a/c) sin(omega_a r / c).
double delta_e_1d_free_space(const EmitterPair& pair, double k0, double c);

/// Separation where the bandgap far-zone envelope (Gamma_3/pi) k0 / r^2 meets the
/// vacuum envelope (omega_a/c)^2 / r:  r* = Gamma_3 c^2 k0 / (pi omega_a^2).
double crossover_seed(double gamma3_value, double omega_a, double k0, double c);

}  // namespace bandgap
