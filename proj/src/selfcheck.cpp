#include "bandgap/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bandgap/analysis.hpp"
#include "bandgap/asymptotics.hpp"
#include "bandgap/interaction.hpp"
#include "bandgap/quadrature.hpp"
#include "bandgap/tensor3d.hpp"

namespace bandgap {

namespace {

double rel_error(double got, double want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

double rel_error(const Eigen::Matrix3d& got, const Eigen::Matrix3d& want) {
  return (got - want).norm() / want.norm();
}

CheckOutcome at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

std::string label(const std::string& base, double value) {
  std::ostringstream s;
  s << base << " @ " << value;
  return s.str();
}

void quadrature_checks(std::vector<CheckOutcome>& out) {
  for (const QuadratureOracle& oracle : quadrature_oracles()) {
    for (double rho : {1.0, 10.0, 100.0, 1e4}) {
      OscillatorySpec spec;
      spec.kind = oracle.cosine ? Oscillator::Cosine : Oscillator::Sine;
      spec.rate = rho;
      spec.rel_tol = 1e-12;
      const QuadratureResult q = integrate_oscillatory(oracle.weight, spec);
      const double tol = rho > 100.0 ? 1e-8 : 1e-10;
      out.push_back(at_most(label("quadrature " + oracle.name + " k0r", rho), rel_error(q.value, oracle.exact(rho)), tol));
    }
  }
}

void tensor_checks(std::vector<CheckOutcome>& out) {
  const Eigen::Vector3d z_hat = Eigen::Vector3d::UnitZ();

  RadialFunction inverse{[](double r) { return 1.0 / r; }, [](double r) { return -1.0 / (r * r); },
                         [](double r) { return 2.0 / (r * r * r); }};
  const double r = 1.7;
  const Eigen::Matrix3d dipole_kernel =
      (3.0 * z_hat * z_hat.transpose() - Eigen::Matrix3d::Identity()) / (r * r * r);
  out.push_back(at_most("tensor 1/r static kernel", rel_error(dyadic_apply(inverse, r, z_hat), dipole_kernel), 1e-12));

  const double k = 10.0;
  const double kc = 3.0;
  RadialFunction outgoing{
      [kc](double s) { return std::cos(kc * s) / s; },
      [kc](double s) { return -kc * std::sin(kc * s) / s - std::cos(kc * s) / (s * s); },
      [kc](double s) {
        return -kc * kc * std::cos(kc * s) / s + 2.0 * kc * std::sin(kc * s) / (s * s) +
               2.0 * std::cos(kc * s) / (s * s * s);
      }};
  struct Case {
    std::string name;
    RadialFunction g;
    double r;
    double h;
  };
  const Case cases[] = {
      {"tensor finite difference 1/r", inverse, r, 1e-4 * r},
      {"tensor finite difference sinc kr=10", sinc_mode(k), 10.0 / k, 1e-4 / k},
      {"tensor finite difference cos(kr)/r", outgoing, r, 1e-4 / kc},
  };
  const Eigen::Vector3d direction = Eigen::Vector3d(1.0, -2.0, 2.0).normalized();
  for (const Case& c : cases) {
    for (const Eigen::Vector3d& r_hat : {z_hat, direction}) {
      auto field = [&c](const Eigen::Vector3d& x) { return c.g.value(x.norm()); };
      const Eigen::Matrix3d fd = finite_difference_dyadic(field, c.r * r_hat, c.h);
      out.push_back(at_most(c.name, rel_error(dyadic_apply(c.g, c.r, r_hat), fd), 1e-6));
    }
  }

  const Eigen::Matrix3d t = mode_tensor(k, 0.37, direction);
  out.push_back(at_most("tensor symmetry |T - T^T|", (t - t.transpose()).norm(), 0.0));
}

void envelope_checks(std::vector<CheckOutcome>& out) {
  struct Law {
    std::string name;
    double exponent;
    std::function<double(double)> f;
  };
  const Law laws[] = {
      {"envelope exponent cos(r)/r^2", -2.0, [](double x) { return std::cos(x) / (x * x); }},
      {"envelope exponent sin(r)/r", -1.0, [](double x) { return std::sin(x) / x; }},
      {"envelope exponent sin(0.45 r)", 0.0, [](double x) { return std::sin(0.45 * x); }},
  };
  for (const Law& law : laws) {
    std::vector<ProfilePoint> samples;
    for (int i = 0; i < 4000; ++i) {
      const double x = 100.0 + 900.0 * i / 3999.0;
      samples.push_back({x, law.f(x)});
    }
    const EnvelopeFit fit = fit_envelope(samples);
    out.push_back(at_most(law.name + " (abs)", std::abs(fit.exponent - law.exponent), 0.02));
  }
}

void symmetry_checks(std::vector<CheckOutcome>& out) {
  Scenario s;
  const DispersionModel model = s.model();
  const double r = 150.0 / s.k0();

  for (int dimension : {3, 1}) {
    s.dimension = dimension;
    s.symmetry = Symmetry::Symmetric;
    const EnergyResult plus = delta_e_numeric(s.pair_at(r), model, BandSelector::Both, s.quadrature);
    s.symmetry = Symmetry::Antisymmetric;
    const EnergyResult minus = delta_e_numeric(s.pair_at(r), model, BandSelector::Both, s.quadrature);
    const std::string d = dimension == 3 ? "3D" : "1D";
    out.push_back(at_most("symmetry swap negates " + d + " (abs)", std::abs(plus.value + minus.value), 0.0));

    const double sum = *plus.below_gap + *plus.above_gap;
    out.push_back(at_most("band additivity " + d + " (abs, vs error estimate)", std::abs(sum - plus.value),
                          plus.quadrature.abs_error_estimate));
  }

  s.dimension = 3;
  s.symmetry = Symmetry::Symmetric;
  s.dipole = s.axis;
  const AsymptoticConstants constants = asymptotic_constants(model.edges(), s.omega_a);
  out.push_back(at_most("longitudinal far-zone energy (abs)",
                        std::abs(delta_e_3d_asymptotic(s.pair_at(r), constants, s.k0())), 0.0));
}

}  // namespace

Eigen::Matrix3d finite_difference_dyadic(const std::function<double(const Eigen::Vector3d&)>& field,
                                         const Eigen::Vector3d& x, double h) {
  Eigen::Matrix3d hessian;
  const double f0 = field(x);
  for (int l = 0; l < 3; ++l) {
    const Eigen::Vector3d el = h * Eigen::Vector3d::Unit(l);
    hessian(l, l) = (field(x + el) - 2.0 * f0 + field(x - el)) / (h * h);
    for (int m = l + 1; m < 3; ++m) {
      const Eigen::Vector3d em = h * Eigen::Vector3d::Unit(m);
      hessian(l, m) = (field(x + el + em) - field(x + el - em) - field(x - el + em) + field(x - el - em)) /
                      (4.0 * h * h);
      hessian(m, l) = hessian(l, m);
    }
  }
  return hessian - hessian.trace() * Eigen::Matrix3d::Identity();
}

std::vector<QuadratureOracle> quadrature_oracles() {
  return {
      {"1 cos", [](double) { return 1.0; }, true, [](double p) { return std::sin(p) / p; }},
      {"1 sin", [](double) { return 1.0; }, false, [](double p) { return (1.0 - std::cos(p)) / p; }},
      {"k cos", [](double k) { return k; }, true,
       [](double p) { return (std::cos(p) - 1.0) / (p * p) + std::sin(p) / p; }},
  };
}

std::vector<CheckOutcome> run_invariant_suite() {
  std::vector<CheckOutcome> out;
  quadrature_checks(out);
  tensor_checks(out);
  envelope_checks(out);
  symmetry_checks(out);
  return out;
}

}  // namespace bandgap
