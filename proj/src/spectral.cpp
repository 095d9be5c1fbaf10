#include "bandgap/spectral.hpp"

#include <cmath>
#include <sstream>

#include "bandgap/errors.hpp"

namespace bandgap {

double EmitterPair::separation() const {
  return std::visit([](const auto& g) { return g.r; }, geometry);
}

void EmitterPair::validate() const {
  if (!(omega_a > 0.0) || !std::isfinite(omega_a)) {
    throw Error(ErrorKind::InvalidEmitter, "transition frequency must be positive");
  }
  const double r = separation();
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::ZeroSeparation, "emitter separation must be positive");
  }
  if (const auto* d = std::get_if<Dipoles3D>(&geometry)) {
    if (!d->mu_a.allFinite() || !d->mu_b.allFinite() || !d->r_hat.allFinite()) {
      throw Error(ErrorKind::InvalidEmitter, "dipole and axis components must be finite");
    }
    if (std::abs(d->r_hat.norm() - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidEmitter, "separation axis must be a unit vector");
    }
    if (d->mu_a != d->mu_b) {
      throw Error(ErrorKind::InvalidEmitter,
                  "dipole matrix elements of the two emitters must be equal");
    }
    if (d->mu_a.squaredNorm() == 0.0) {
      throw Error(ErrorKind::InvalidEmitter, "dipole moment must be non-zero");
    }
  } else {
    const auto& p = std::get<Dipoles1D>(geometry);
    if (!(p.p_perp_sq > 0.0) || !std::isfinite(p.p_perp_sq)) {
      throw Error(ErrorKind::InvalidEmitter, "|p_perp|^2 must be positive");
    }
  }
}

GapPosition gap_position(const BandEdges& edges, double omega_a) {
  return GapPosition{edges.omega_l / omega_a, (omega_a - edges.omega_l) / edges.width()};
}

double rotating_term(double omega_k, double omega_a) { return omega_k / (omega_a - omega_k); }

double counter_rotating_term(double omega_k, double omega_a) { return omega_k / (omega_a + omega_k); }

double spectral_weight(const DispersionModel& model, double omega_a, double k, double guard) {
  const double w = model.omega(k);
  if (std::abs(omega_a - w) <= guard * omega_a) {
    std::ostringstream msg;
    msg << "mode frequency " << w << " resonates with omega_a = " << omega_a
        << "; the transition must lie strictly inside the gap";
    throw Error(ErrorKind::ResonancePole, msg.str());
  }
  return rotating_term(w, omega_a) - counter_rotating_term(w, omega_a);
}

double integrand_1d(const DispersionModel& model, double omega_a, double r, double k) {
  return spectral_weight(model, omega_a, k) * std::cos(k * r);
}

double integrand_3d(const DispersionModel& model, double omega_a, double r, double k) {
  if (k == 0.0) {
    return 0.0;
  }
  return spectral_weight(model, omega_a, k) * std::sin(k * r) / k;
}

}  // namespace bandgap
