#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bandgap {

/// How the oscillatory factor enters the integrand.
///   Sine / Cosine : integrand is f(k) * sin(rate k) or f(k) * cos(rate k)
///   Embedded      : f already contains the oscillation; rate only sets the panel width
enum class Oscillator { Sine, Cosine, Embedded };

struct OscillatorySpec {
  Oscillator kind = Oscillator::Cosine;
  double rate = 0.0;
  double k_lo = 0.0;
  double k_hi = 1.0;
  double rel_tol = 1e-8;
  std::size_t max_panels = 1'000'000;
  double abs_floor = 1e-30;

  /// Throws InvalidInterval on k_lo >= k_hi, a negative rate or rel_tol outside (0, 1e-2].
  void validate() const;
};

/// `abs_error_estimate` is the sum over panels of max(|K21 - G10|, roundoff), and
/// `roundoff_floor` the roundoff part alone (50 eps times the panel L1 norm).
/// `converged` holds iff abs_error_estimate <= rel_tol |value| + abs_floor + roundoff_floor,
/// i.e. the truncation error met the request and only rounding is left.
struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double roundoff_floor = 0.0;
  std::size_t panels_used = 0;
  bool converged = true;

  /// Sum of two disjoint-interval integrals.
  QuadratureResult& operator+=(const QuadratureResult& other);
};

using Weight = std::function<double(double)>;

/// Integrates f(k) * osc(rate k) over [k_lo, k_hi]. The interval is cut into
/// equal panels no wider than the half-period pi / rate, each gets a 21-point
/// Gauss-Kronrod rule, and panels whose Kronrod/Gauss difference exceeds
/// their roundoff level are bisected (largest first) until the tolerance is
/// met or max_panels is reached. Intervals shorter than one full period
/// start from a single panel. Deterministic; panel sums are compensated.
QuadratureResult integrate_oscillatory(const Weight& f, const OscillatorySpec& spec);

/// Same rule on `panels` equal panels, no refinement.
QuadratureResult integrate_fixed(const Weight& f, const OscillatorySpec& spec, std::size_t panels);

/// Number of panels in the initial half-period partition.
std::size_t half_period_panels(const OscillatorySpec& spec);

struct ProfilePoint {
  double r = 0.0;
  double value = 0.0;
};

/// Derivative of a sampled profile: three-point central differences inside,
/// second-order one-sided differences at both ends. Spacing may vary.
/// Throws TooFewSamples (< 5) or NonMonotonicAbscissa.
std::vector<ProfilePoint> differentiate_profile(std::span<const ProfilePoint> samples);

}  // namespace bandgap
