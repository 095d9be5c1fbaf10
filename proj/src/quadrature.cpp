#include "bandgap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bandgap/compensated_sum.hpp"
#include "bandgap/errors.hpp"

namespace bandgap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRoundoffFactor = 50.0;

// 21-point Kronrod extension of the 10-point Gauss rule. Boost stores the
// non-negative abscissas in ascending order; the Gauss nodes are the odd ones.
struct Rule {
  std::array<double, 11> x{};
  std::array<double, 11> wk{};
  std::array<double, 5> wg{};

  Rule() {
    const auto& kx = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& kw = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& gx = boost::math::quadrature::gauss<double, 10>::abscissa();
    const auto& gw = boost::math::quadrature::gauss<double, 10>::weights();
    std::copy(kx.begin(), kx.end(), x.begin());
    std::copy(kw.begin(), kw.end(), wk.begin());
    for (std::size_t j = 0; j < 5; ++j) {
      if (std::abs(gx[j] - x[2 * j + 1]) > 1e-15) {
        throw std::logic_error("Gauss nodes are not embedded in the Kronrod rule");
      }
      wg[j] = gw[j];
    }
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double kronrod = 0.0;
  double gauss_error = 0.0;
  double roundoff = 0.0;

  double error() const { return std::max(gauss_error, roundoff); }
  double excess() const { return gauss_error - roundoff; }
};

template <typename Integrand>
Panel evaluate_panel(const Integrand& h, double a, double b) {
  const Rule& q = rule();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = h(center);
  double kronrod = q.wk[0] * fc;
  double gauss = 0.0;
  double l1 = q.wk[0] * std::abs(fc);
  for (std::size_t i = 1; i < q.x.size(); ++i) {
    const double dx = half * q.x[i];
    const double f1 = h(center - dx);
    const double f2 = h(center + dx);
    kronrod += q.wk[i] * (f1 + f2);
    l1 += q.wk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) {
      gauss += q.wg[i / 2] * (f1 + f2);
    }
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.kronrod = kronrod * half;
  p.gauss_error = std::abs((kronrod - gauss) * half);
  p.roundoff = kRoundoffFactor * kEps * l1 * std::abs(half);
  return p;
}

QuadratureResult summarize(std::vector<Panel>& panels, const OscillatorySpec& spec, bool refined) {
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  CompensatedSum<double> value;
  CompensatedSum<double> error;
  CompensatedSum<double> roundoff;
  for (const Panel& p : panels) {
    value += p.kronrod;
    error += p.error();
    roundoff += p.roundoff;
  }
  QuadratureResult out;
  out.value = value.result();
  out.abs_error_estimate = error.result();
  out.roundoff_floor = roundoff.result();
  out.panels_used = panels.size();
  out.converged = refined && out.abs_error_estimate <=
                                 spec.rel_tol * std::abs(out.value) + spec.abs_floor + out.roundoff_floor;
  return out;
}

template <typename Integrand>
QuadratureResult adaptive(const Integrand& h, const OscillatorySpec& spec) {
  const std::size_t initial = half_period_panels(spec);
  const double width = spec.k_hi - spec.k_lo;

  std::vector<Panel> panels;
  panels.reserve(initial);
  for (std::size_t j = 0; j < initial; ++j) {
    const double a = spec.k_lo + width * static_cast<double>(j) / static_cast<double>(initial);
    const double b = j + 1 == initial
                         ? spec.k_hi
                         : spec.k_lo + width * static_cast<double>(j + 1) / static_cast<double>(initial);
    panels.push_back(evaluate_panel(h, a, b));
  }

  auto by_excess = [&panels](std::size_t l, std::size_t r) {
    return panels[l].excess() < panels[r].excess();
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_excess)> queue(by_excess);

  double value = 0.0;
  double truncation = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    value += panels[i].kronrod;
    truncation += std::max(0.0, panels[i].excess());
    if (panels[i].excess() > 0.0) {
      queue.push(i);
    }
  }

  bool met = false;
  while (true) {
    if (truncation <= spec.rel_tol * std::abs(value) + spec.abs_floor || queue.empty()) {
      met = true;
      break;
    }
    if (panels.size() >= spec.max_panels) {
      break;
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel parent = panels[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) {
      // Panel cannot be split further in double precision; its difference is noise.
      truncation -= std::max(0.0, parent.excess());
      panels[worst].roundoff = std::max(parent.roundoff, parent.gauss_error);
      continue;
    }
    Panel left = evaluate_panel(h, parent.a, mid);
    Panel right = evaluate_panel(h, mid, parent.b);
    value += left.kronrod + right.kronrod - parent.kronrod;
    truncation += std::max(0.0, left.excess()) + std::max(0.0, right.excess()) -
                  std::max(0.0, parent.excess());
    truncation = std::max(truncation, 0.0);
    panels[worst] = left;
    panels.push_back(right);
    if (left.excess() > 0.0) {
      queue.push(worst);
    }
    if (right.excess() > 0.0) {
      queue.push(panels.size() - 1);
    }
  }

  // Running totals only steer refinement; the verdict comes from the ordered recount.
  return summarize(panels, spec, met);
}

template <typename Callback>
QuadratureResult dispatch(const Weight& f, const OscillatorySpec& spec, Callback&& run) {
  spec.validate();
  switch (spec.kind) {
    case Oscillator::Sine:
      return run([&f, rate = spec.rate](double k) { return f(k) * std::sin(rate * k); });
    case Oscillator::Cosine:
      return run([&f, rate = spec.rate](double k) { return f(k) * std::cos(rate * k); });
    case Oscillator::Embedded:
      break;
  }
  return run([&f](double k) { return f(k); });
}

}  // namespace

void OscillatorySpec::validate() const {
  if (!(k_lo < k_hi) || !std::isfinite(k_lo) || !std::isfinite(k_hi)) {
    std::ostringstream msg;
    msg << "integration interval [" << k_lo << ", " << k_hi << "] is empty or not finite";
    throw Error(ErrorKind::InvalidInterval, msg.str());
  }
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorKind::InvalidInterval, "oscillation rate must be non-negative");
  }
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw Error(ErrorKind::InvalidInterval, "relative tolerance must lie in (0, 1e-2]");
  }
  if (max_panels == 0) {
    throw Error(ErrorKind::InvalidInterval, "panel budget must be positive");
  }
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  abs_error_estimate += other.abs_error_estimate;
  roundoff_floor += other.roundoff_floor;
  panels_used += other.panels_used;
  converged = converged && other.converged;
  return *this;
}

std::size_t half_period_panels(const OscillatorySpec& spec) {
  const double phase = spec.rate * (spec.k_hi - spec.k_lo);
  if (phase < 2.0 * std::numbers::pi) {
    return 1;
  }
  const double halves = phase / std::numbers::pi;
  auto count = static_cast<std::size_t>(std::floor(halves));
  // A trailing sliver is folded into the last full panel.
  if (halves - static_cast<double>(count) > 1e-3) {
    ++count;
  }
  return std::max<std::size_t>(count, 1);
}

QuadratureResult integrate_oscillatory(const Weight& f, const OscillatorySpec& spec) {
  return dispatch(f, spec, [&spec](const auto& h) { return adaptive(h, spec); });
}

QuadratureResult integrate_fixed(const Weight& f, const OscillatorySpec& spec, std::size_t panels) {
  if (panels == 0) {
    throw Error(ErrorKind::InvalidInterval, "at least one panel is required");
  }
  return dispatch(f, spec, [&spec, panels](const auto& h) {
    std::vector<Panel> parts;
    parts.reserve(panels);
    const double width = spec.k_hi - spec.k_lo;
    for (std::size_t j = 0; j < panels; ++j) {
      const double a = spec.k_lo + width * static_cast<double>(j) / static_cast<double>(panels);
      const double b = j + 1 == panels
                           ? spec.k_hi
                           : spec.k_lo + width * static_cast<double>(j + 1) / static_cast<double>(panels);
      parts.push_back(evaluate_panel(h, a, b));
    }
    return summarize(parts, spec, true);
  });
}

std::vector<ProfilePoint> differentiate_profile(std::span<const ProfilePoint> samples) {
  const std::size_t n = samples.size();
  if (n < 5) {
    throw Error(ErrorKind::TooFewSamples, "at least 5 samples are needed to differentiate a profile");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(samples[i].r > samples[i - 1].r)) {
      throw Error(ErrorKind::NonMonotonicAbscissa, "sample abscissas must be strictly increasing");
    }
  }

  // All formulas are written in value differences so a flat profile gives exactly zero.
  std::vector<ProfilePoint> out(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = samples[i].r - samples[i - 1].r;
    const double h1 = samples[i + 1].r - samples[i].r;
    const double d0 = samples[i].value - samples[i - 1].value;
    const double d1 = samples[i + 1].value - samples[i].value;
    out[i] = {samples[i].r, (h0 * h0 * d1 + h1 * h1 * d0) / (h0 * h1 * (h0 + h1))};
  }

  auto one_sided = [](const ProfilePoint& p0, const ProfilePoint& p1, const ProfilePoint& p2) {
    const double h1 = p1.r - p0.r;
    const double s = p2.r - p0.r;
    const double d1 = p1.value - p0.value;
    const double d2 = p2.value - p0.value;
    return (d1 * s * s - d2 * h1 * h1) / (h1 * s * (s - h1));
  };
  out.front() = {samples[0].r, one_sided(samples[0], samples[1], samples[2])};
  out.back() = {samples[n - 1].r, one_sided(samples[n - 1], samples[n - 2], samples[n - 3])};
  return out;
}

}  // namespace bandgap
