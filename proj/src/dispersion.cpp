#include "bandgap/dispersion.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "bandgap/errors.hpp"

namespace bandgap {

void CrystalParams::validate() const {
  if (!(n > 1.0) || !std::isfinite(n)) {
    std::ostringstream msg;
    msg << "refractive index must exceed 1, got " << n;
    throw Error(ErrorKind::InvalidCrystal, msg.str());
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    std::ostringstream msg;
    msg << "slab half-thickness must be positive, got " << a;
    throw Error(ErrorKind::InvalidCrystal, msg.str());
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidCrystal, "speed of light must be positive");
  }
}

double band_edge_cosine(double n) {
  const double n2 = n * n;
  return (1.0 + n2 - 6.0 * n) / (1.0 + n2 + 2.0 * n);
}

BandEdges band_edges(const CrystalParams& crystal) {
  crystal.validate();
  const double arg = band_edge_cosine(crystal.n);
  // (1+n^2-6n)/(1+n^2+2n) = 1 - 8n/(1+n)^2 and 8n/(1+n)^2 <= 2.
  assert(arg >= -1.0 && arg <= 1.0);
  const double scale = crystal.c / (4.0 * crystal.n * crystal.a);
  const double omega_l = scale * std::acos(arg);
  return BandEdges{omega_l, 2.0 * std::numbers::pi * scale - omega_l};
}

double effective_speed(const BandEdges& edges, double k0) { return 2.0 * edges.omega_l / k0; }

DispersionModel::DispersionModel(const BandEdges& edges, double k0)
    : edges_(edges), k0_(k0), curvature_(edges.omega_l / (k0 * k0)) {
  if (!(edges.omega_l > 0.0) || !(edges.omega_u > edges.omega_l)) {
    throw Error(ErrorKind::InvalidCrystal, "band edges must satisfy 0 < omega_l < omega_u");
  }
  if (!(k0 > 0.0)) {
    throw Error(ErrorKind::InvalidCrystal, "gap wavenumber must be positive");
  }
}

double DispersionModel::omega(double k) const {
  if (k < 0.0) {
    throw Error(ErrorKind::NegativeWavenumber, "dispersion queried at k < 0");
  }
  if (k <= k0_) {
    return curvature_ * k * (2.0 * k0_ - k);
  }
  const double dk = k - k0_;
  return edges_.omega_u + curvature_ * dk * dk;
}

double DispersionModel::group_velocity(double k) const {
  if (k < 0.0) {
    throw Error(ErrorKind::NegativeWavenumber, "dispersion queried at k < 0");
  }
  if (k <= k0_) {
    return 2.0 * curvature_ * (k0_ - k);
  }
  return 2.0 * curvature_ * (k - k0_);
}

DispersionModel make_dispersion(const BandEdges& edges, double k0) { return DispersionModel(edges, k0); }

DispersionModel make_dispersion(const CrystalParams& crystal) {
  return DispersionModel(band_edges(crystal), crystal.k0());
}

}  // namespace bandgap
