#include "bandgap/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "bandgap/errors.hpp"

namespace bandgap::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  std::ostringstream msg;
  msg << "line " << line << ": " << message;
  throw Error(ErrorKind::ParseError, msg.str());
}

double parse_double(std::string_view text, std::size_t line, std::string_view key) {
  if (text.find_first_of("ij") != std::string_view::npos) {
    parse_error(line, std::string(key) + ": complex values are not supported");
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    parse_error(line, std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    parse_error(line, std::string(key) + ": value must be finite");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::size_t line, std::string_view key) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    parse_error(line, std::string(key) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

Eigen::Vector3d parse_vector(std::string_view text, std::size_t line, std::string_view key) {
  std::vector<double> parts;
  std::string buffer(text);
  std::replace(buffer.begin(), buffer.end(), ',', ' ');
  std::istringstream tokens(buffer);
  std::string token;
  while (tokens >> token) {
    parts.push_back(parse_double(token, line, key));
  }
  if (parts.size() != 3) {
    parse_error(line, std::string(key) + ": expected three components");
  }
  return {parts[0], parts[1], parts[2]};
}

template <typename Enum>
Enum parse_choice(std::string_view text, const std::map<std::string, Enum, std::less<>>& choices, std::size_t line,
                  std::string_view key) {
  const auto it = choices.find(text);
  if (it == choices.end()) {
    std::string allowed;
    for (const auto& [name, _] : choices) {
      allowed += allowed.empty() ? name : "|" + name;
    }
    parse_error(line, std::string(key) + ": expected " + allowed + ", got '" + std::string(text) + "'");
  }
  return it->second;
}

const std::map<std::string, Symmetry, std::less<>> kSymmetries{{"symmetric", Symmetry::Symmetric},
                                                               {"antisymmetric", Symmetry::Antisymmetric}};
const std::map<std::string, BandSelector, std::less<>> kBands{
    {"below", BandSelector::BelowGap}, {"above", BandSelector::AboveGapWindow}, {"both", BandSelector::Both}};
const std::map<std::string, LengthUnits, std::less<>> kLengthUnits{{"reduced", LengthUnits::Reduced},
                                                                   {"meters", LengthUnits::Meters}};
const std::map<std::string, Format, std::less<>> kFormats{{"csv", Format::Csv}, {"json", Format::Json}};
const std::map<std::string, Units, std::less<>> kUnits{{"reduced", Units::Reduced}, {"si", Units::Si}};

template <typename Enum>
std::string choice_name(Enum value, const std::map<std::string, Enum, std::less<>>& choices) {
  for (const auto& [name, v] : choices) {
    if (v == value) {
      return name;
    }
  }
  return {};
}

using Setter = std::function<void(RunConfig&, std::string_view, std::size_t, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"crystal.n", [](RunConfig& c, auto v, auto l, auto k) { c.crystal.n = parse_double(v, l, k); }},
      {"crystal.a", [](RunConfig& c, auto v, auto l, auto k) { c.crystal.a = parse_double(v, l, k); }},
      {"constants.c", [](RunConfig& c, auto v, auto l, auto k) { c.crystal.c = parse_double(v, l, k); }},
      {"emitter.omega_a", [](RunConfig& c, auto v, auto l, auto k) { c.omega_a = parse_double(v, l, k); }},
      {"emitter.dimension",
       [](RunConfig& c, auto v, auto l, auto k) { c.dimension = static_cast<int>(parse_count(v, l, k)); }},
      {"emitter.dipole", [](RunConfig& c, auto v, auto l, auto k) { c.dipole = parse_vector(v, l, k); }},
      {"emitter.axis", [](RunConfig& c, auto v, auto l, auto k) { c.axis = parse_vector(v, l, k); }},
      {"emitter.p_perp_sq", [](RunConfig& c, auto v, auto l, auto k) { c.p_perp_sq = parse_double(v, l, k); }},
      {"emitter.symmetry",
       [](RunConfig& c, auto v, auto l, auto k) { c.symmetry = parse_choice(v, kSymmetries, l, k); }},
      {"sweep.r_min", [](RunConfig& c, auto v, auto l, auto k) { c.sweep.r_min = parse_double(v, l, k); }},
      {"sweep.r_max", [](RunConfig& c, auto v, auto l, auto k) { c.sweep.r_max = parse_double(v, l, k); }},
      {"sweep.points", [](RunConfig& c, auto v, auto l, auto k) { c.sweep.points = parse_count(v, l, k); }},
      {"sweep.units",
       [](RunConfig& c, auto v, auto l, auto k) { c.sweep.units = parse_choice(v, kLengthUnits, l, k); }},
      {"model.band", [](RunConfig& c, auto v, auto l, auto k) { c.band = parse_choice(v, kBands, l, k); }},
      {"model.above_gap_upper",
       [](RunConfig& c, auto v, auto l, auto k) { c.quadrature.above_gap_upper = parse_double(v, l, k); }},
      {"quadrature.rel_tol",
       [](RunConfig& c, auto v, auto l, auto k) { c.quadrature.rel_tol = parse_double(v, l, k); }},
      {"quadrature.max_panels",
       [](RunConfig& c, auto v, auto l, auto k) { c.quadrature.max_panels = parse_count(v, l, k); }},
      {"output.format",
       [](RunConfig& c, auto v, auto l, auto k) { c.output.format = parse_choice(v, kFormats, l, k); }},
      {"output.path", [](RunConfig& c, auto v, auto, auto) { c.output.path = std::string(v); }},
      {"output.units", [](RunConfig& c, auto v, auto l, auto k) { c.output.units = parse_choice(v, kUnits, l, k); }},
      {"analysis.ratio_min", [](RunConfig& c, auto v, auto l, auto k) { c.ratio.rho_min = parse_double(v, l, k); }},
      {"analysis.ratio_max", [](RunConfig& c, auto v, auto l, auto k) { c.ratio.rho_max = parse_double(v, l, k); }},
      {"analysis.ratio_points",
       [](RunConfig& c, auto v, auto l, auto k) { c.ratio.points = parse_count(v, l, k); }},
  };
  return table;
}

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::ValidationError, message); }

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
  return crystal == other.crystal && omega_a == other.omega_a && dimension == other.dimension &&
         dipole == other.dipole && axis == other.axis && p_perp_sq == other.p_perp_sq &&
         symmetry == other.symmetry && sweep == other.sweep && band == other.band &&
         quadrature == other.quadrature && output == other.output && ratio == other.ratio;
}

Scenario RunConfig::scenario() const {
  Scenario s;
  s.crystal = crystal;
  s.omega_a = omega_a;
  s.dimension = dimension;
  s.symmetry = symmetry;
  s.dipole = dipole;
  s.axis = axis;
  s.p_perp_sq = p_perp_sq;
  s.band = band;
  s.quadrature = quadrature;
  return s;
}

SweepGrid RunConfig::grid() const {
  const double scale = sweep.units == LengthUnits::Meters ? crystal.k0() : 1.0;
  return {sweep.r_min * scale, sweep.r_max * scale, sweep.points};
}

void validate(const RunConfig& config) {
  try {
    config.crystal.validate();
  } catch (const Error& e) {
    invalid(e.what());
  }
  if (!(config.omega_a > 0.0)) {
    invalid("emitter.omega_a must be positive");
  }
  const BandEdges edges = band_edges(config.crystal);
  if (config.omega_a <= edges.omega_l) {
    invalid("emitter.omega_a = " + short_number(config.omega_a) + " 1/s is below lower band edge " +
            short_number(edges.omega_l) + " 1/s (gap is " + short_number(edges.omega_l) + " to " +
            short_number(edges.omega_u) + " 1/s)");
  }
  if (config.omega_a >= edges.omega_u) {
    invalid("emitter.omega_a = " + short_number(config.omega_a) + " 1/s is above upper band edge " +
            short_number(edges.omega_u) + " 1/s (gap is " + short_number(edges.omega_l) + " to " +
            short_number(edges.omega_u) + " 1/s)");
  }
  if (config.dimension != 1 && config.dimension != 3) {
    invalid("emitter.dimension must be 1 or 3");
  }
  if (!(config.dipole.norm() > 0.0)) {
    invalid("emitter.dipole must be nonzero");
  }
  if (!(config.axis.norm() > 0.0)) {
    invalid("emitter.axis must be nonzero");
  }
  if (!(config.p_perp_sq > 0.0)) {
    invalid("emitter.p_perp_sq must be positive");
  }
  if (config.sweep.points < 1) {
    invalid("sweep.points must be at least 1");
  }
  if (!(config.sweep.r_min > 0.0)) {
    invalid("sweep.r_min must be positive (r > 0)");
  }
  if (config.sweep.points > 1 ? !(config.sweep.r_min < config.sweep.r_max)
                              : !(config.sweep.r_min <= config.sweep.r_max)) {
    invalid("sweep.r_min must be less than sweep.r_max");
  }
  if (!(config.quadrature.rel_tol > 0.0 && config.quadrature.rel_tol <= 1e-2)) {
    invalid("quadrature.rel_tol must lie in (0, 1e-2]");
  }
  if (config.quadrature.max_panels < 1) {
    invalid("quadrature.max_panels must be at least 1");
  }
  if (!(config.quadrature.above_gap_upper > 1.0)) {
    invalid("model.above_gap_upper must exceed 1");
  }
  if (!(config.ratio.rho_min > 0.0 && config.ratio.rho_min < config.ratio.rho_max) || config.ratio.points < 2) {
    invalid("analysis ratio window needs 0 < ratio_min < ratio_max and ratio_points >= 2");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      parse_error(line_no, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto setter = setters().find(key);
    if (setter == setters().end()) {
      parse_error(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.emplace(key).second) {
      parse_error(line_no, "key '" + std::string(key) + "' given twice");
    }
    setter->second(config, value, line_no, key);
  }
  validate(config);
  return config;
}

std::string serialize_config(const RunConfig& c) {
  auto vec = [](const Eigen::Vector3d& v) { return number(v.x()) + ", " + number(v.y()) + ", " + number(v.z()); };
  std::ostringstream out;
  out << "crystal.n = " << number(c.crystal.n) << '\n'
      << "crystal.a = " << number(c.crystal.a) << '\n'
      << "constants.c = " << number(c.crystal.c) << '\n'
      << "emitter.omega_a = " << number(c.omega_a) << '\n'
      << "emitter.dimension = " << c.dimension << '\n'
      << "emitter.dipole = " << vec(c.dipole) << '\n'
      << "emitter.axis = " << vec(c.axis) << '\n'
      << "emitter.p_perp_sq = " << number(c.p_perp_sq) << '\n'
      << "emitter.symmetry = " << choice_name(c.symmetry, kSymmetries) << '\n'
      << "sweep.r_min = " << number(c.sweep.r_min) << '\n'
      << "sweep.r_max = " << number(c.sweep.r_max) << '\n'
      << "sweep.points = " << c.sweep.points << '\n'
      << "sweep.units = " << choice_name(c.sweep.units, kLengthUnits) << '\n'
      << "model.band = " << choice_name(c.band, kBands) << '\n'
      << "model.above_gap_upper = " << number(c.quadrature.above_gap_upper) << '\n'
      << "quadrature.rel_tol = " << number(c.quadrature.rel_tol) << '\n'
      << "quadrature.max_panels = " << c.quadrature.max_panels << '\n'
      << "output.format = " << choice_name(c.output.format, kFormats) << '\n'
      << "output.path = " << c.output.path << '\n'
      << "output.units = " << choice_name(c.output.units, kUnits) << '\n'
      << "analysis.ratio_min = " << number(c.ratio.rho_min) << '\n'
      << "analysis.ratio_max = " << number(c.ratio.rho_max) << '\n'
      << "analysis.ratio_points = " << c.ratio.points << '\n';
  return out.str();
}

}  // namespace bandgap::cli
