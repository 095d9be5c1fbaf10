#pragma once

#include <ostream>
#include <string>

#include "bandgap/analysis.hpp"
#include "bandgap/cli/config.hpp"

namespace bandgap::cli {

inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

/// Multipliers from reduced to output units. Reduced energies are in
/// |mu|^2 k0^3 (3D) or |p|^2 k0 (1D); SI uses those with 1/(4 pi eps0), the
/// dipole in C m (p_perp_sq in C^2), and k0 in 1/m. Force picks up one more k0.
struct UnitFactors {
  double energy = 1.0;
  double force = 1.0;
  std::string energy_unit = "reduced";
  std::string force_unit = "reduced";
};

UnitFactors unit_factors(const RunConfig& config);

/// 12 significant digits, C locale.
std::string format_value(double v);

inline constexpr const char* kCsvHeader =
    "k0_r,e_numeric,e_asymptotic,e_freespace,force,e_below_gap,e_above_gap,quad_error";

void write_csv(const SweepTable& table, const UnitFactors& units, std::ostream& out);

/// {"metadata": {...}, "rows": [...]}; NaN becomes null.
void write_json(const SweepTable& table, const RunConfig& config, const UnitFactors& units, std::ostream& out);

}  // namespace bandgap::cli
