#include "bandgap/interaction.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bandgap/errors.hpp"
#include "bandgap/tensor3d.hpp"

namespace bandgap {

namespace {

OscillatorySpec make_spec(Oscillator kind, double rate, const BandWindow& k_range, const QuadratureOptions& options) {
  OscillatorySpec spec;
  spec.kind = kind;
  spec.rate = rate;
  spec.k_lo = k_range.lo;
  spec.k_hi = k_range.hi;
  spec.rel_tol = options.rel_tol;
  spec.max_panels = options.max_panels;
  spec.abs_floor = options.abs_floor;
  return spec;
}

void require_inside_gap(const DispersionModel& model, double omega_a) {
  if (!model.edges().inside_gap(omega_a)) {
    std::ostringstream msg;
    msg << "omega_a = " << omega_a << " lies outside the gap (" << model.edges().omega_l << ", "
        << model.edges().omega_u << ")";
    throw Error(ErrorKind::ResonancePole, msg.str());
  }
}

template <typename BandIntegral>
EnergyResult assemble(BandSelector band, const QuadratureOptions& options, double prefactor,
                      const BandIntegral& integrate) {
  EnergyResult out;
  out.quadrature.converged = true;
  auto add = [&](BandSelector part, std::optional<double>& slot) {
    QuadratureResult q = integrate(band_window(part, options));
    q.value *= prefactor;
    q.abs_error_estimate *= std::abs(prefactor);
    q.roundoff_floor *= std::abs(prefactor);
    slot = q.value;
    out.quadrature += q;
  };
  if (band != BandSelector::AboveGapWindow) {
    add(BandSelector::BelowGap, out.below_gap);
  }
  if (band != BandSelector::BelowGap) {
    add(BandSelector::AboveGapWindow, out.above_gap);
  }
  out.value = out.quadrature.value;
  return out;
}

}  // namespace

BandWindow band_window(BandSelector band, const QuadratureOptions& options) {
  switch (band) {
    case BandSelector::BelowGap:
      return {0.0, 1.0};
    case BandSelector::AboveGapWindow:
      if (!(options.above_gap_upper > 1.0)) {
        throw Error(ErrorKind::InvalidInterval, "above-gap window must extend past k0");
      }
      return {1.0, options.above_gap_upper};
    case BandSelector::Both:
      break;
  }
  throw Error(ErrorKind::InvalidInterval, "Both spans two windows");
}

DispersionModel reduced_model(const DispersionModel& model, double omega_a) {
  const BandEdges& e = model.edges();
  return DispersionModel(BandEdges{e.omega_l / omega_a, e.omega_u / omega_a}, 1.0);
}

QuadratureResult band_integral_1d(const DispersionModel& model, double omega_a, double r, const BandWindow& k_range,
                                  const QuadratureOptions& options) {
  const auto weight = [&model, omega_a](double k) { return spectral_weight(model, omega_a, k); };
  return integrate_oscillatory(weight, make_spec(Oscillator::Cosine, r, k_range, options));
}

QuadratureResult band_integral_3d_scalar(const DispersionModel& model, double omega_a, double r,
                                         const BandWindow& k_range, const QuadratureOptions& options) {
  const auto weight = [&model, omega_a](double k) {
    return k == 0.0 ? 0.0 : spectral_weight(model, omega_a, k) / k;
  };
  return integrate_oscillatory(weight, make_spec(Oscillator::Sine, r, k_range, options));
}

QuadratureResult band_integral_3d_tensor(const DispersionModel& model, double omega_a, double r,
                                         const Eigen::Vector3d& r_hat, const Eigen::Vector3d& a,
                                         const Eigen::Vector3d& b, const BandWindow& k_range,
                                         const QuadratureOptions& options) {
  if (!(r > 0.0)) {
    throw Error(ErrorKind::ZeroSeparation, "emitter separation must be positive");
  }
  const auto integrand = [&](double k) {
    // W ~ k^2 and the tensor stays finite, so the k = 0 end contributes nothing.
    if (k == 0.0) {
      return 0.0;
    }
    return spectral_weight(model, omega_a, k) * mode_contraction(k, r, r_hat, a, b);
  };
  return integrate_oscillatory(integrand, make_spec(Oscillator::Embedded, r, k_range, options));
}

EnergyResult delta_e_1d_numeric(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                                const QuadratureOptions& options) {
  pair.validate();
  const auto* geometry = std::get_if<Dipoles1D>(&pair.geometry);
  if (geometry == nullptr) {
    throw Error(ErrorKind::InvalidEmitter, "1D energy requested for a 3D emitter pair");
  }
  require_inside_gap(model, pair.omega_a);

  const DispersionModel reduced = reduced_model(model, pair.omega_a);
  const double rho = model.k0() * geometry->r;
  EnergyResult out = assemble(band, options, 2.0 * pair.sign(), [&](const BandWindow& window) {
    return band_integral_1d(reduced, 1.0, rho, window, options);
  });
  out.symmetry_sign = pair.sign();
  out.k0_r = rho;
  out.three_d = false;
  return out;
}

EnergyResult delta_e_3d_numeric(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                                const QuadratureOptions& options) {
  pair.validate();
  const auto* geometry = std::get_if<Dipoles3D>(&pair.geometry);
  if (geometry == nullptr) {
    throw Error(ErrorKind::InvalidEmitter, "3D energy requested for a 1D emitter pair");
  }
  require_inside_gap(model, pair.omega_a);

  const DispersionModel reduced = reduced_model(model, pair.omega_a);
  const double rho = model.k0() * geometry->r;
  const double norm = geometry->mu_a.norm();
  const Eigen::Vector3d a = geometry->mu_a / norm;
  const Eigen::Vector3d b = geometry->mu_b / norm;
  EnergyResult out =
      assemble(band, options, pair.sign() / std::numbers::pi, [&](const BandWindow& window) {
        return band_integral_3d_tensor(reduced, 1.0, rho, geometry->r_hat, a, b, window, options);
      });
  out.symmetry_sign = pair.sign();
  out.k0_r = rho;
  out.three_d = true;
  return out;
}

EnergyResult delta_e_numeric(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                             const QuadratureOptions& options) {
  return pair.is_3d() ? delta_e_3d_numeric(pair, model, band, options)
                      : delta_e_1d_numeric(pair, model, band, options);
}

EnergyResult energy_transfer_element(const EmitterPair& pair, const DispersionModel& model, BandSelector band,
                                     const QuadratureOptions& options) {
  EmitterPair symmetric = pair;
  symmetric.symmetry = Symmetry::Symmetric;
  EnergyResult out = delta_e_numeric(symmetric, model, band, options);
  out.value = std::abs(out.value);
  out.quadrature.value = out.value;
  out.below_gap.reset();
  out.above_gap.reset();
  out.symmetry_sign = 1;
  return out;
}

std::vector<ProfilePoint> force_profile(std::span<const EnergyResult> sweep) {
  std::vector<ProfilePoint> energy;
  energy.reserve(sweep.size());
  for (const EnergyResult& e : sweep) {
    energy.push_back({e.k0_r, e.value});
  }
  std::vector<ProfilePoint> force = differentiate_profile(energy);
  for (ProfilePoint& p : force) {
    p.value = -p.value;
  }
  return force;
}

}  // namespace bandgap
