#include "bandgap/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace bandgap::cli {

namespace {

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

UnitFactors unit_factors(const RunConfig& config) {
  UnitFactors f;
  if (config.output.units == Units::Reduced) {
    f.energy_unit = config.dimension == 3 ? "|mu|^2 k0^3" : "|p|^2 k0";
    f.force_unit = f.energy_unit + " per 1/k0";
    return f;
  }
  const double k0 = config.crystal.k0();
  const double coupling = 1.0 / (4.0 * std::numbers::pi * kVacuumPermittivity);
  f.energy = config.dimension == 3 ? coupling * config.dipole.squaredNorm() * k0 * k0 * k0
                                   : coupling * config.p_perp_sq * k0;
  f.force = f.energy * k0;
  f.energy_unit = "J";
  f.force_unit = "N";
  return f;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const SweepTable& table, const UnitFactors& units, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : table.rows) {
    out << format_value(r.k0_r) << ',' << format_value(r.e_numeric * units.energy) << ','
        << format_value(r.e_asymptotic * units.energy) << ',' << format_value(r.e_freespace * units.energy) << ','
        << format_value(r.force * units.force) << ',' << format_value(r.e_below_gap * units.energy) << ','
        << format_value(r.e_above_gap * units.energy) << ',' << format_value(r.quad_error * units.energy) << '\n';
  }
}

void write_json(const SweepTable& table, const RunConfig& config, const UnitFactors& units, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& r : table.rows) {
    nlohmann::ordered_json row;
    row["k0_r"] = r.k0_r;
    row["e_numeric"] = number_or_null(r.e_numeric * units.energy);
    row["e_asymptotic"] = number_or_null(r.e_asymptotic * units.energy);
    row["e_freespace"] = number_or_null(r.e_freespace * units.energy);
    row["force"] = number_or_null(r.force * units.force);
    row["e_below_gap"] = number_or_null(r.e_below_gap * units.energy);
    row["e_above_gap"] = number_or_null(r.e_above_gap * units.energy);
    row["quad_error"] = number_or_null(r.quad_error * units.energy);
    row["converged"] = r.converged;
    if (!r.error.empty()) {
      row["error"] = r.error;
    }
    rows.push_back(std::move(row));
  }

  nlohmann::ordered_json meta;
  meta["version"] = BANDGAP_VERSION;
  meta["config"] = serialize_config(config);
  meta["dimension"] = table.dimension;
  meta["units"] = {{"k0_r", "dimensionless"},
                   {"energy", units.energy_unit},
                   {"force", units.force_unit},
                   {"energy_factor", units.energy},
                   {"force_factor", units.force}};
  meta["k0"] = config.crystal.k0();

  nlohmann::ordered_json doc;
  doc["metadata"] = std::move(meta);
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace bandgap::cli
