#pragma once

#include <functional>

#include <Eigen/Core>

namespace bandgap {

/// Spherically symmetric scalar g(|x|) with its first two radial derivatives.
struct RadialFunction {
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;
};

/// (-lap delta_lm + d_l d_m) g at distance r along r_hat, from g'(r) and g''(r):
///   -(g'' + 2g'/r) delta + (delta - r_hat r_hat) g'/r + r_hat r_hat g''
/// Throws ZeroSeparation for r <= 0.
Eigen::Matrix3d dyadic_from_derivatives(double g1, double g2, double r, const Eigen::Vector3d& r_hat);

Eigen::Matrix3d dyadic_apply(const RadialFunction& g, double r, const Eigen::Vector3d& r_hat);

/// g_k(r) = sin(kr)/(kr) with its analytic derivatives.
RadialFunction sinc_mode(double k);

/// Spherical Bessel j0(x) and j1(x); j1 switches to its series for small x.
double spherical_j0(double x);
double spherical_j1(double x);

/// Operator applied to sin(kr)/(kr):
///   k^2 [ (j0 - j1/x) delta + (3 j1/x - j0) r_hat r_hat ],  x = k r.
/// For kr >> 1 this tends to k^2 (delta - r_hat r_hat) sin(kr)/(kr).
/// Throws ZeroSeparation for r <= 0.
Eigen::Matrix3d mode_tensor(double k, double r, const Eigen::Vector3d& r_hat);

/// a . T . b in the two scalar coefficients of mode_tensor, without forming T.
double mode_contraction(double k, double r, const Eigen::Vector3d& r_hat, const Eigen::Vector3d& a,
                        const Eigen::Vector3d& b);

/// delta - r_hat r_hat.
Eigen::Matrix3d transverse_projector(const Eigen::Vector3d& r_hat);

}  // namespace bandgap
