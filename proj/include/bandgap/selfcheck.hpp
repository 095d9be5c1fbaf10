#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace bandgap {

/// One invariant check: `measured` is compared against `tolerance`
/// (relative error unless the name says otherwise).
struct CheckOutcome {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// (-lap delta + grad grad) of a scalar field at x by second-order central
/// differences with step h, independent of the radial formulas.
Eigen::Matrix3d finite_difference_dyadic(const std::function<double(const Eigen::Vector3d&)>& field,
                                         const Eigen::Vector3d& x, double h);

/// Quadrature oracles on [0, 1] (k in units of k0) with their closed forms.
struct QuadratureOracle {
  std::string name;
  std::function<double(double)> weight;
  bool cosine = true;
  std::function<double(double)> exact;  // as a function of the phase rate rho
};
std::vector<QuadratureOracle> quadrature_oracles();

/// Quadrature oracles, tensor finite differences, envelope synthetics and the
/// exact symmetry relations. Cheap enough to run from the command line.
std::vector<CheckOutcome> run_invariant_suite();

}  // namespace bandgap
