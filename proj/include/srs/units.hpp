#ifndef SRS_UNITS_HPP
#define SRS_UNITS_HPP

#include <span>
#include <string_view>

namespace srs {

enum class Dimension { time, length, frequency, field, density, energy, dimensionless };

std::string_view to_string(Dimension d);

/// A value tagged with the physical dimension it carries.
struct Quantity {
  double value = 0.0;
  Dimension dimension = Dimension::dimensionless;
};

/// Laboratory (and atomic) units understood at the configuration boundary.
/// Frequencies are angular rates, so "s-1" means rad/s.
enum class LabUnit {
  attosecond,
  femtosecond,
  picosecond,
  second,
  au_time,
  nanometer,
  micrometer,
  centimeter,
  meter,
  bohr,
  per_second,
  per_femtosecond,
  au_frequency,
  volt_per_cm,
  volt_per_m,
  au_field,
  per_cm3,
  per_m3,
  au_density,
  electronvolt,
  hartree,
  dimensionless,
};

struct LabUnitInfo {
  LabUnit unit;
  std::string_view symbol;
  Dimension dimension;
  double atomic_per_unit; // 1 unit = atomic_per_unit a.u.
};

/// The full unit table; one entry per LabUnit.
std::span<const LabUnitInfo> unit_table();

const LabUnitInfo& info(LabUnit u);
Dimension dimension_of(LabUnit u);
std::string_view symbol_of(LabUnit u);

/// Looks a unit up by symbol ("fs", "cm-3", "V/cm", ...). The symbol "au"
/// resolves to the atomic unit of `expected`. Throws ConfigError for unknown
/// symbols or when the symbol belongs to another dimension.
LabUnit parse_unit(std::string_view symbol, Dimension expected);

/// Converts a lab-unit quantity to atomic units. Throws ConfigError when the
/// unit's dimension does not match q.dimension or the value is not finite.
double to_atomic(const Quantity& q, LabUnit unit);

/// Inverse of to_atomic.
Quantity from_atomic(double value, LabUnit unit);

/// Angular carrier frequency (a.u.) of light with vacuum wavelength
/// `wavelength` (a.u.).
double carrier_from_wavelength(double wavelength);

} // namespace srs

#endif // SRS_UNITS_HPP
