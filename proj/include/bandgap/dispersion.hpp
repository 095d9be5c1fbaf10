#pragma once

#include <numbers>

namespace bandgap {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Periodic dielectric stack: slabs of index `n` and thickness 2a separated by
/// vacuum gaps b = 2na, the spacing for which the first gap is analytic.
struct CrystalParams {
  double n = 3.0;
  double a = 2e-8;
  double c = kSpeedOfLight;

  double vacuum_gap() const { return 2.0 * n * a; }
  double period() const { return 2.0 * a * (1.0 + n); }
  double k0() const { return std::numbers::pi / period(); }

  /// Throws InvalidCrystal unless n > 1, a > 0 and c > 0.
  void validate() const;

  bool operator==(const CrystalParams&) const = default;
};

struct BandEdges {
  double omega_l = 0.0;
  double omega_u = 0.0;

  double width() const { return omega_u - omega_l; }
  bool inside_gap(double omega) const { return omega > omega_l && omega < omega_u; }
};

/// Lower and upper edges of the first gap of the b = 2na stack.
BandEdges band_edges(const CrystalParams& crystal);

/// Argument of the arccos in the band-edge formula; lies in [-1, 1] for n > 1.
double band_edge_cosine(double n);

/// 2 omega_l / k0, the propagation speed of long-wavelength photons.
double effective_speed(const BandEdges& edges, double k0);

enum class Branch { Below, Above };

/// Piecewise effective-mass dispersion:
///   k <= k0 : omega = 2 A k k0 - A k^2        (interpolates omega ~ v k at small k)
///   k >  k0 : omega = omega_u + A (k - k0)^2
/// with A = omega_l / k0^2 shared by both branches. Nothing maps into the gap.
class DispersionModel {
 public:
  DispersionModel(const BandEdges& edges, double k0);

  const BandEdges& edges() const { return edges_; }
  double k0() const { return k0_; }
  double curvature() const { return curvature_; }

  Branch branch(double k) const { return k <= k0_ ? Branch::Below : Branch::Above; }

  /// Throws NegativeWavenumber for k < 0.
  double omega(double k) const;
  double group_velocity(double k) const;

 private:
  BandEdges edges_;
  double k0_;
  double curvature_;
};

DispersionModel make_dispersion(const BandEdges& edges, double k0);

/// Model for a crystal: edges from band_edges(), k0 = pi / period.
DispersionModel make_dispersion(const CrystalParams& crystal);

}  // namespace bandgap
