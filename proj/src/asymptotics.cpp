#include "bandgap/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "bandgap/errors.hpp"

namespace bandgap {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorKind::ValidationError, "alpha = omega_l / omega_a must be non-negative");
  }
  if (1.0 - alpha < kEdgeGuard) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " is within " << kEdgeGuard << " of the band edge";
    throw Error(ErrorKind::EdgeResonance, msg.str());
  }
}

// alpha / (1 - alpha^2), the shared pole term.
double edge_term(double alpha) { return alpha / ((1.0 - alpha) * (1.0 + alpha)); }

// mu_a.(delta - r_hat r_hat).mu_b / |mu|^2 written as (mu_a x r_hat).(mu_b x r_hat),
// which is exactly zero for dipoles along the axis.
double transverse_weight(const Dipoles3D& d) {
  return d.mu_a.cross(d.r_hat).dot(d.mu_b.cross(d.r_hat)) / d.mu_a.squaredNorm();
}

}  // namespace

double gamma3(double alpha) {
  check_alpha(alpha);
  return 2.0 * edge_term(alpha) + std::sqrt(alpha / (1.0 + alpha));
}

double gamma1(double alpha) {
  check_alpha(alpha);
  return 2.0 * (edge_term(alpha) + 1.0);
}

AsymptoticConstants asymptotic_constants(double alpha) { return {gamma1(alpha), gamma3(alpha), alpha}; }

AsymptoticConstants asymptotic_constants(const BandEdges& edges, double omega_a) {
  return asymptotic_constants(edges.omega_l / omega_a);
}

FarZoneValue i3d_asymptotic(const AsymptoticConstants& constants, double k0, double r) {
  const double rho = k0 * r;
  return {-constants.gamma3 * std::cos(rho) / rho, rho >= kFarZoneThreshold};
}

FarZoneValue i1d_asymptotic(const AsymptoticConstants& constants, double k0, double r) {
  const double rho = k0 * r;
  return {constants.gamma1 * std::sin(rho) / r, rho >= kFarZoneThreshold};
}

double delta_e_3d_asymptotic(const EmitterPair& pair, const AsymptoticConstants& constants, double k0) {
  const auto& d = std::get<Dipoles3D>(pair.geometry);
  const double rho = k0 * d.r;
  return -pair.sign() * (constants.gamma3 / std::numbers::pi) * transverse_weight(d) * std::cos(rho) /
         (rho * rho);
}

double delta_e_1d_asymptotic(const EmitterPair& pair, const AsymptoticConstants& constants, double k0) {
  const double rho = k0 * std::get<Dipoles1D>(pair.geometry).r;
  return pair.sign() * 2.0 * constants.gamma1 * std::sin(rho) / rho;
}

double delta_e_3d_free_space(const EmitterPair& pair, double k0, double c) {
  const auto& d = std::get<Dipoles3D>(pair.geometry);
  const double q = pair.omega_a / (c * k0);  // vacuum wavenumber in units of k0
  const double phase = pair.omega_a * d.r / c;
  return -pair.sign() * q * q * q * transverse_weight(d) * std::cos(phase) / phase;
}

double delta_e_1d_free_space(const EmitterPair& pair, double k0, double c) {
  const auto& p = std::get<Dipoles1D>(pair.geometry);
  const double q = pair.omega_a / (c * k0);
  return pair.sign() * 2.0 * std::numbers::pi * q * std::sin(pair.omega_a * p.r / c);
}

double crossover_seed(double gamma3_value, double omega_a, double k0, double c) {
  return gamma3_value * c * c * k0 / (std::numbers::pi * omega_a * omega_a);
}

}  // namespace bandgap
