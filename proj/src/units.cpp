#include "srs/units.hpp"

#include "srs/constants.hpp"
#include "srs/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace srs {

namespace {

using namespace constants;

constexpr double fs = 1e-15 / atomic_time_s;
constexpr double cm = 1.0 / bohr_cm;

constexpr std::array<LabUnitInfo, 22> kUnits{{
    {LabUnit::attosecond, "as", Dimension::time, 1e-18 / atomic_time_s},
    {LabUnit::femtosecond, "fs", Dimension::time, fs},
    {LabUnit::picosecond, "ps", Dimension::time, 1e-12 / atomic_time_s},
    {LabUnit::second, "s", Dimension::time, 1.0 / atomic_time_s},
    {LabUnit::au_time, "au", Dimension::time, 1.0},
    {LabUnit::nanometer, "nm", Dimension::length, 1e-9 / bohr_m},
    {LabUnit::micrometer, "um", Dimension::length, 1e-6 / bohr_m},
    {LabUnit::centimeter, "cm", Dimension::length, cm},
    {LabUnit::meter, "m", Dimension::length, 1.0 / bohr_m},
    {LabUnit::bohr, "au", Dimension::length, 1.0},
    {LabUnit::per_second, "s-1", Dimension::frequency, atomic_time_s},
    {LabUnit::per_femtosecond, "fs-1", Dimension::frequency, 1.0 / fs},
    {LabUnit::au_frequency, "au", Dimension::frequency, 1.0},
    {LabUnit::volt_per_cm, "V/cm", Dimension::field, 1e2 / atomic_field_V_per_m},
    {LabUnit::volt_per_m, "V/m", Dimension::field, 1.0 / atomic_field_V_per_m},
    {LabUnit::au_field, "au", Dimension::field, 1.0},
    {LabUnit::per_cm3, "cm-3", Dimension::density, bohr_cm * bohr_cm * bohr_cm},
    {LabUnit::per_m3, "m-3", Dimension::density, bohr_m * bohr_m * bohr_m},
    {LabUnit::au_density, "au", Dimension::density, 1.0},
    {LabUnit::electronvolt, "eV", Dimension::energy, 1.0 / hartree_eV},
    {LabUnit::hartree, "au", Dimension::energy, 1.0},
    {LabUnit::dimensionless, "1", Dimension::dimensionless, 1.0},
}};

} // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
  case Dimension::time: return "time";
  case Dimension::length: return "length";
  case Dimension::frequency: return "frequency";
  case Dimension::field: return "field";
  case Dimension::density: return "density";
  case Dimension::energy: return "energy";
  case Dimension::dimensionless: return "dimensionless";
  }
  return "?";
}

std::span<const LabUnitInfo> unit_table() { return kUnits; }

const LabUnitInfo& info(LabUnit u) {
  for (const auto& entry : kUnits) {
    if (entry.unit == u) return entry;
  }
  throw ConfigError("unknown unit tag");
}

Dimension dimension_of(LabUnit u) { return info(u).dimension; }
std::string_view symbol_of(LabUnit u) { return info(u).symbol; }

LabUnit parse_unit(std::string_view symbol, Dimension expected) {
  bool known = false;
  for (const auto& entry : kUnits) {
    if (entry.symbol != symbol) continue;
    known = true;
    if (entry.dimension == expected) return entry.unit;
  }
  if (known) {
    throw ConfigError("unit '" + std::string(symbol) + "' is not a " +
                      std::string(to_string(expected)) + " unit");
  }
  throw ConfigError("unknown unit '" + std::string(symbol) + "'");
}

double to_atomic(const Quantity& q, LabUnit unit) {
  const auto& u = info(unit);
  if (u.dimension != q.dimension) {
    throw ConfigError("unit '" + std::string(u.symbol) + "' does not measure " +
                      std::string(to_string(q.dimension)));
  }
  if (!std::isfinite(q.value)) throw ConfigError("non-finite quantity");
  return q.value * u.atomic_per_unit;
}

Quantity from_atomic(double value, LabUnit unit) {
  const auto& u = info(unit);
  return {value / u.atomic_per_unit, u.dimension};
}

double carrier_from_wavelength(double wavelength) {
  if (!(wavelength > 0.0)) throw ConfigError("wavelength must be positive");
  return 2.0 * constants::pi * constants::speed_of_light_au / wavelength;
}

} // namespace srs
