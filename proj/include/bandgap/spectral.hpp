#pragma once

#include <variant>

#include <Eigen/Core>

#include "bandgap/dispersion.hpp"

namespace bandgap {

enum class Symmetry { Symmetric, Antisymmetric };

/// +1 for the symmetric state, -1 for the antisymmetric one.
constexpr int symmetry_sign(Symmetry s) { return s == Symmetry::Symmetric ? 1 : -1; }

/// Transition dipoles of the two emitters and the unit vector from A to B.
/// The emitters are identical, so mu_a and mu_b must coincide.
struct Dipoles3D {
  Eigen::Vector3d mu_a{0.0, 0.0, 1.0};
  Eigen::Vector3d mu_b{0.0, 0.0, 1.0};
  Eigen::Vector3d r_hat{1.0, 0.0, 0.0};
  double r = 1.0;
};

/// 1D guide: squared perpendicular coupling |p|^2 (dipole per unit length).
struct Dipoles1D {
  double p_perp_sq = 1.0;
  double r = 1.0;
};

struct EmitterPair {
  double omega_a = 1.0;
  Symmetry symmetry = Symmetry::Symmetric;
  std::variant<Dipoles3D, Dipoles1D> geometry = Dipoles3D{};

  bool is_3d() const { return std::holds_alternative<Dipoles3D>(geometry); }
  double separation() const;
  int sign() const { return symmetry_sign(symmetry); }

  /// Throws InvalidEmitter (or ZeroSeparation for r <= 0).
  void validate() const;
};

/// Where the transition frequency sits relative to the gap.
struct GapPosition {
  double alpha = 0.0;  // omega_l / omega_a
  double delta = 0.0;  // (omega_a - omega_l) / gap width

  bool inside_gap() const { return delta > 0.0 && delta < 1.0; }
  /// omega_a - omega_l << gap width; the regime where the above-gap band is negligible.
  bool near_lower_edge(double threshold = 0.1) const { return inside_gap() && delta < threshold; }
};

GapPosition gap_position(const BandEdges& edges, double omega_a);

inline constexpr double kDefaultPoleGuard = 1e-9;

/// Rotating term omega_k / (omega_a - omega_k) of the mode-sum bracket.
double rotating_term(double omega_k, double omega_a);
/// Counter-rotating term omega_k / (omega_a + omega_k).
double counter_rotating_term(double omega_k, double omega_a);

/// W(k) = rotating - counter-rotating = 2 w^2 / (omega_a^2 - w^2), w = omega(k).
/// Throws ResonancePole when |omega_a - w| <= guard * omega_a.
double spectral_weight(const DispersionModel& model, double omega_a, double k,
                       double guard = kDefaultPoleGuard);

/// W(k) cos(k r).
double integrand_1d(const DispersionModel& model, double omega_a, double r, double k);

/// W(k) sin(k r) / k, continuous at k = 0 where it vanishes (W ~ k^2).
double integrand_3d(const DispersionModel& model, double omega_a, double r, double k);

}  // namespace bandgap
