#include "bandgap/tensor3d.hpp"

#include <cmath>

#include "bandgap/errors.hpp"

namespace bandgap {

namespace {

void require_separation(double r) {
  if (!(r > 0.0)) {
    throw Error(ErrorKind::ZeroSeparation, "operator evaluated at r <= 0");
  }
}

// Coefficients of delta and r_hat r_hat, in units of k^2.
struct ModeCoefficients {
  double isotropic;
  double axial;
};

ModeCoefficients mode_coefficients(double x) {
  if (x == 0.0) {
    // j1(x)/x -> 1/3: isotropic 2/3, axial 0.
    return {2.0 / 3.0, 0.0};
  }
  const double j0 = spherical_j0(x);
  const double j1_over_x = spherical_j1(x) / x;
  return {j0 - j1_over_x, 3.0 * j1_over_x - j0};
}

}  // namespace

Eigen::Matrix3d transverse_projector(const Eigen::Vector3d& r_hat) {
  return Eigen::Matrix3d::Identity() - r_hat * r_hat.transpose();
}

Eigen::Matrix3d dyadic_from_derivatives(double g1, double g2, double r, const Eigen::Vector3d& r_hat) {
  require_separation(r);
  const Eigen::Matrix3d axial = r_hat * r_hat.transpose();
  const Eigen::Matrix3d identity = Eigen::Matrix3d::Identity();
  return -(g2 + 2.0 * g1 / r) * identity + (identity - axial) * (g1 / r) + axial * g2;
}

Eigen::Matrix3d dyadic_apply(const RadialFunction& g, double r, const Eigen::Vector3d& r_hat) {
  require_separation(r);
  return dyadic_from_derivatives(g.first(r), g.second(r), r, r_hat);
}

double spherical_j0(double x) {
  if (std::abs(x) < 1e-4) {
    return 1.0 - x * x / 6.0;
  }
  return std::sin(x) / x;
}

double spherical_j1(double x) {
  if (std::abs(x) < 0.25) {
    // x/3 - x^3/30 + x^5/840 - x^7/45360 + x^9/3991680
    const double x2 = x * x;
    return x * (1.0 / 3.0 + x2 * (-1.0 / 30.0 + x2 * (1.0 / 840.0 + x2 * (-1.0 / 45360.0 + x2 / 3991680.0))));
  }
  return (std::sin(x) / x - std::cos(x)) / x;
}

RadialFunction sinc_mode(double k) {
  RadialFunction g;
  g.value = [k](double r) { return spherical_j0(k * r); };
  g.first = [k](double r) { return -k * spherical_j1(k * r); };
  g.second = [k](double r) {
    const double x = k * r;
    const double j1_over_x = x == 0.0 ? 1.0 / 3.0 : spherical_j1(x) / x;
    return k * k * (2.0 * j1_over_x - spherical_j0(x));
  };
  return g;
}

Eigen::Matrix3d mode_tensor(double k, double r, const Eigen::Vector3d& r_hat) {
  require_separation(r);
  const ModeCoefficients c = mode_coefficients(k * r);
  const double k2 = k * k;
  return k2 * (c.isotropic * Eigen::Matrix3d::Identity() + c.axial * (r_hat * r_hat.transpose()));
}

double mode_contraction(double k, double r, const Eigen::Vector3d& r_hat, const Eigen::Vector3d& a,
                        const Eigen::Vector3d& b) {
  require_separation(r);
  const ModeCoefficients c = mode_coefficients(k * r);
  return k * k * (c.isotropic * a.dot(b) + c.axial * a.dot(r_hat) * b.dot(r_hat));
}

}  // namespace bandgap
