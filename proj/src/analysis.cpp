#include "bandgap/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Geometry>

#include "bandgap/errors.hpp"

namespace bandgap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, n) on a small worker pool. body must not throw.
template <typename Body>
void parallel_for(std::size_t n, const Body& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        body(i);
      }
    });
  }
}

struct Peak {
  double r;
  double magnitude;
};

// Vertex of the parabola through three points, clamped to their span.
Peak refine_peak(const ProfilePoint& a, const ProfilePoint& b, const ProfilePoint& c) {
  const double ya = std::abs(a.value);
  const double yb = std::abs(b.value);
  const double yc = std::abs(c.value);
  const double d1 = (yb - ya) / (b.r - a.r);
  const double d2 = (yc - yb) / (c.r - b.r);
  const double curvature = (d2 - d1) / (c.r - a.r);
  if (!(curvature < 0.0)) {
    return {b.r, yb};
  }
  // y = yb + s (x - b.r) + curvature (x - b.r)^2 around b
  const double slope = d1 + curvature * (b.r - a.r);
  double dx = -slope / (2.0 * curvature);
  dx = std::clamp(dx, a.r - b.r, c.r - b.r);
  return {b.r + dx, yb + slope * dx + curvature * dx * dx};
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi <= -std::numbers::pi) {
    phi += two_pi;
  } else if (phi > std::numbers::pi) {
    phi -= two_pi;
  }
  return phi;
}

double rms(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) {
    sum += x * x;
  }
  return std::sqrt(sum / static_cast<double>(v.size()));
}

}  // namespace

EmitterPair Scenario::pair_at(double r) const {
  EmitterPair pair;
  pair.omega_a = omega_a;
  pair.symmetry = symmetry;
  if (dimension == 3) {
    pair.geometry = Dipoles3D{dipole, dipole, axis.normalized(), r};
  } else {
    pair.geometry = Dipoles1D{p_perp_sq, r};
  }
  return pair;
}

EnvelopeFit fit_envelope(std::span<const ProfilePoint> samples, std::optional<double> fixed_exponent) {
  const std::size_t n = samples.size();
  if (n < 3) {
    throw Error(ErrorKind::InsufficientCoverage, "too few samples to locate oscillations");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(samples[i].r > samples[i - 1].r)) {
      throw Error(ErrorKind::NonMonotonicAbscissa, "sample abscissas must be strictly increasing");
    }
  }

  // Zero crossings by linear interpolation; an exact zero takes the sign before it.
  std::vector<double> crossings;
  std::vector<std::size_t> crossing_index;  // sample just after each crossing
  bool first_ascending = true;
  double previous_sign = 0.0;
  std::size_t previous_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = samples[i].value;
    if (v == 0.0) {
      continue;
    }
    const double sign = v > 0.0 ? 1.0 : -1.0;
    if (previous_sign != 0.0 && sign != previous_sign) {
      const ProfilePoint& p = samples[previous_index];
      const ProfilePoint& q = samples[i];
      crossings.push_back(p.r - p.value * (q.r - p.r) / (q.value - p.value));
      crossing_index.push_back(i);
      if (crossings.size() == 1) {
        first_ascending = sign > 0.0;
      }
    }
    previous_sign = sign;
    previous_index = i;
  }

  if (crossings.size() < 21) {
    std::ostringstream msg;
    msg << "only " << crossings.size() << " zero crossings; at least 10 full periods are required";
    throw Error(ErrorKind::InsufficientCoverage, msg.str());
  }
  const double half_period = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  const double period = 2.0 * half_period;
  const double spacing = (samples[n - 1].r - samples[0].r) / static_cast<double>(n - 1);
  if (period / spacing < 8.0) {
    std::ostringstream msg;
    msg << "period " << period << " is resolved by only " << period / spacing << " samples";
    throw Error(ErrorKind::InsufficientCoverage, msg.str());
  }

  std::vector<Peak> peaks;
  for (std::size_t j = 0; j + 1 < crossing_index.size(); ++j) {
    const std::size_t lo = crossing_index[j];
    const std::size_t hi = crossing_index[j + 1];  // exclusive
    if (hi <= lo) {
      continue;
    }
    std::size_t best = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (std::abs(samples[i].value) > std::abs(samples[best].value)) {
        best = i;
      }
    }
    if (best == 0 || best + 1 >= n) {
      peaks.push_back({samples[best].r, std::abs(samples[best].value)});
    } else {
      peaks.push_back(refine_peak(samples[best - 1], samples[best], samples[best + 1]));
    }
  }

  // Least squares on log|peak| = log(amplitude) + exponent * log(r).
  const double m = static_cast<double>(peaks.size());
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const Peak& p : peaks) {
    const double x = std::log(p.r);
    const double y = std::log(p.magnitude);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  EnvelopeFit fit;
  if (fixed_exponent) {
    fit.exponent = *fixed_exponent;
  } else {
    fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  const double intercept = (sy - fit.exponent * sx) / m;
  fit.amplitude = std::exp(intercept);

  double residual = 0.0;
  for (const Peak& p : peaks) {
    const double e = std::log(p.magnitude) - intercept - fit.exponent * std::log(p.r);
    residual += e * e;
  }
  fit.residual = std::sqrt(residual / m);
  fit.peaks = peaks.size();
  fit.period = period;
  const double wavenumber = 2.0 * std::numbers::pi / period;
  fit.phase = wrap_phase((first_ascending ? 0.0 : std::numbers::pi) - wavenumber * crossings.front());
  return fit;
}

BandRatio band_ratio(const Scenario& scenario, const RatioWindow& window) {
  if (!(window.rho_min > 0.0 && window.rho_min < window.rho_max) || window.points < 2) {
    throw Error(ErrorKind::InvalidInterval, "ratio window must satisfy 0 < min < max with 2+ points");
  }
  const DispersionModel model = scenario.model();
  const double k0 = model.k0();
  std::vector<double> below(window.points);
  std::vector<double> above(window.points);
  std::vector<std::exception_ptr> errors(window.points);
  std::atomic<bool> converged{true};

  parallel_for(window.points, [&](std::size_t i) {
    const double rho = window.rho_min + (window.rho_max - window.rho_min) * static_cast<double>(i) /
                                            static_cast<double>(window.points - 1);
    try {
      const EnergyResult e =
          delta_e_numeric(scenario.pair_at(rho / k0), model, BandSelector::Both, scenario.quadrature);
      below[i] = *e.below_gap;
      above[i] = *e.above_gap;
      if (!e.quadrature.converged) {
        converged = false;
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const std::exception_ptr& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }

  BandRatio out;
  out.rms_below = rms(below);
  out.rms_above = rms(above);
  out.ratio = out.rms_below / out.rms_above;
  out.near_lower_edge = gap_position(model.edges(), scenario.omega_a).near_lower_edge();
  out.converged = converged;
  return out;
}

Crossover crossover_distance(const Scenario& scenario, std::optional<double> omega_l_override) {
  if (scenario.dimension != 3) {
    throw Error(ErrorKind::ValidationError, "crossover distance is defined for the 3D configuration");
  }
  const EmitterPair probe = scenario.pair_at(1.0);
  probe.validate();
  const auto& dipoles = std::get<Dipoles3D>(probe.geometry);
  const double transverse = dipoles.mu_a.cross(dipoles.r_hat).squaredNorm();
  if (!(transverse > 0.0)) {
    throw Error(ErrorKind::NoCrossover, "dipoles along the axis have no far-zone envelope");
  }

  const BandEdges edges = band_edges(scenario.crystal);
  const double omega_l = omega_l_override.value_or(edges.omega_l);
  const double alpha = omega_l / scenario.omega_a;
  const double g3 = gamma3(alpha);
  const double c = scenario.crystal.c;
  const double k0 = scenario.k0();
  const double q = scenario.omega_a / (c * k0);

  // Envelopes in reduced units at s = omega_a r / c (k0 r = s / q); the common
  // transverse factor cancels.
  auto log_excess = [&](double s) {
    const double rho = s / q;
    const double bandgap = g3 / std::numbers::pi / (rho * rho);
    const double vacuum = q * q / rho;
    return std::log(vacuum / bandgap);
  };

  constexpr std::size_t kGrid = 4001;
  const double log_lo = std::log(0.1);
  const double log_hi = std::log(1e5);
  auto grid = [&](std::size_t i) {
    return std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(kGrid - 1));
  };
  // Smallest grid point after which the vacuum envelope stays larger.
  std::optional<std::size_t> first;
  for (std::size_t i = kGrid; i-- > 0;) {
    if (log_excess(grid(i)) > 0.0) {
      first = i;
    } else {
      break;
    }
  }
  if (!first || *first == 0) {
    throw Error(ErrorKind::NoCrossover, "envelopes do not cross between 0.1 and 1e5 c/omega_a");
  }

  double lo = grid(*first - 1);
  double hi = grid(*first);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_excess(mid) > 0.0 ? hi : lo) = mid;
  }

  Crossover out;
  out.r_reduced = 0.5 * (lo + hi);
  out.r = out.r_reduced * c / scenario.omega_a;
  out.seed_reduced = crossover_seed(g3, scenario.omega_a, k0, c) * scenario.omega_a / c;
  out.gamma3 = g3;
  out.alpha = alpha;
  return out;
}

bool SweepTable::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.converged && r.error.empty(); });
}

double SweepGrid::at(std::size_t i) const {
  if (points <= 1) {
    return rho_min;
  }
  return rho_min + (rho_max - rho_min) * static_cast<double>(i) / static_cast<double>(points - 1);
}

SweepTable run_sweep(const Scenario& scenario, const SweepGrid& grid) {
  if (grid.points == 0 || !(grid.rho_min > 0.0) || (grid.points > 1 && !(grid.rho_max > grid.rho_min))) {
    throw Error(ErrorKind::ValidationError, "sweep grid needs points >= 1 and 0 < rho_min < rho_max");
  }
  const DispersionModel model = scenario.model();
  const double k0 = model.k0();
  const double c = scenario.crystal.c;
  const AsymptoticConstants constants = asymptotic_constants(model.edges(), scenario.omega_a);

  SweepTable table;
  table.dimension = scenario.dimension;
  table.rows.resize(grid.points);
  std::vector<std::exception_ptr> failures(grid.points);

  parallel_for(grid.points, [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    row.k0_r = grid.at(i);
    try {
      const EmitterPair pair = scenario.pair_at(row.k0_r / k0);
      const EnergyResult e = delta_e_numeric(pair, model, BandSelector::Both, scenario.quadrature);
      row.e_below_gap = *e.below_gap;
      row.e_above_gap = *e.above_gap;
      switch (scenario.band) {
        case BandSelector::BelowGap: row.e_numeric = row.e_below_gap; break;
        case BandSelector::AboveGapWindow: row.e_numeric = row.e_above_gap; break;
        case BandSelector::Both: row.e_numeric = e.value; break;
      }
      row.quad_error = e.quadrature.abs_error_estimate;
      row.converged = e.quadrature.converged;
      if (pair.is_3d()) {
        row.e_asymptotic = delta_e_3d_asymptotic(pair, constants, k0);
        row.e_freespace = delta_e_3d_free_space(pair, k0, c);
      } else {
        row.e_asymptotic = delta_e_1d_asymptotic(pair, constants, k0);
        row.e_freespace = delta_e_1d_free_space(pair, k0, c);
      }
    } catch (const std::exception& ex) {
      failures[i] = std::current_exception();
      row.error = ex.what();
      row.converged = false;
      row.e_numeric = row.e_asymptotic = row.e_freespace = kNaN;
      row.e_below_gap = row.e_above_gap = row.quad_error = kNaN;
    }
    row.force = kNaN;
  });

  const bool any_ok = std::any_of(table.rows.begin(), table.rows.end(),
                                  [](const SweepRow& r) { return r.error.empty(); });
  if (!any_ok) {
    std::rethrow_exception(failures.front());
  }

  const bool all_ok = std::all_of(table.rows.begin(), table.rows.end(),
                                  [](const SweepRow& r) { return r.error.empty(); });
  if (all_ok && table.rows.size() >= 5) {
    std::vector<ProfilePoint> energy;
    energy.reserve(table.rows.size());
    for (const SweepRow& r : table.rows) {
      energy.push_back({r.k0_r, r.e_numeric});
    }
    const std::vector<ProfilePoint> slope = differentiate_profile(energy);
    for (std::size_t i = 0; i < slope.size(); ++i) {
      table.rows[i].force = -slope[i].value;
    }
  }
  return table;
}

}  // namespace bandgap
