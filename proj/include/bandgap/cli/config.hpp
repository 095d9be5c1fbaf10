#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "bandgap/analysis.hpp"
#include "bandgap/dispersion.hpp"
#include "bandgap/interaction.hpp"
#include "bandgap/spectral.hpp"

namespace bandgap::cli {

enum class Format { Csv, Json };
enum class Units { Reduced, Si };
enum class LengthUnits { Reduced, Meters };  // reduced = k0 r

struct SweepSettings {
  double r_min = 100.0;
  double r_max = 1000.0;
  std::size_t points = 2000;
  LengthUnits units = LengthUnits::Reduced;

  bool operator==(const SweepSettings&) const = default;
};

struct OutputSettings {
  Format format = Format::Csv;
  std::string path;  // empty: standard output
  Units units = Units::Reduced;

  bool operator==(const OutputSettings&) const = default;
};

struct RunConfig {
  CrystalParams crystal;
  double omega_a = 2.65e15;
  int dimension = 3;
  Eigen::Vector3d dipole{0.0, 0.0, 1.0};
  Eigen::Vector3d axis{1.0, 0.0, 0.0};
  double p_perp_sq = 1.0;
  Symmetry symmetry = Symmetry::Symmetric;
  SweepSettings sweep;
  BandSelector band = BandSelector::Both;
  QuadratureOptions quadrature;
  OutputSettings output;
  RatioWindow ratio;

  bool operator==(const RunConfig& other) const;

  Scenario scenario() const;
  /// Sweep bounds converted to k0 r.
  SweepGrid grid() const;
};

/// Parses a flat `dotted.key = value` document; `#` starts a comment.
/// Missing keys keep their defaults (the reference crystal and emitter).
/// Throws ParseError for malformed lines, unknown or repeated keys and bad
/// values, and ValidationError (via validate) for out-of-range settings.
RunConfig parse_config(std::string_view text);

/// Every key, one per line, with 17 significant digits so that
/// parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Throws ValidationError naming the violated condition. A transition
/// frequency outside the gap is reported together with the computed edges.
void validate(const RunConfig& config);

}  // namespace bandgap::cli
