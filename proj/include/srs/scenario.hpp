#ifndef SRS_SCENARIO_HPP
#define SRS_SCENARIO_HPP

#include "srs/numerics.hpp"
#include "srs/phasematch.hpp"
#include "srs/polarizability.hpp"
#include "srs/pulses.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace srs {

struct SweepSpec {
  std::string var;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  /// `steps` evenly spaced values from min to max inclusive (just `min` when
  /// steps == 1).
  std::vector<double> values() const;
};

/// How a pulse strength was given: as Omega_R * tau (dimensionless) or as a
/// field amplitude (a.u.).
struct PulseStrength {
  bool by_rabi = true;
  double value = 0.0;
};

struct ModelConfig {
  std::string type = "lorentzian"; // lorentzian | delta | discrete
  // lorentzian
  double dipole_sq = 1.0;
  std::optional<double> width; // a.u.
  std::optional<double> gamma; // width * duration
  // delta
  std::optional<double> binding_energy; // a.u.
  std::optional<double> x;              // carrier / binding energy
  DeltaBranch branch = DeltaBranch::physical;
  // discrete
  std::vector<Level> levels;
  double broadening = 0.0;
};

/// Fully resolved run description, atomic units throughout. `resolved` is
/// the configuration with every default filled in, in the units the user
/// wrote; feeding it back to resolve_config reproduces the same run.
struct ScenarioConfig {
  std::string command;
  nlohmann::ordered_json resolved;

  double carrier = 0.0;
  double duration = 0.0;
  double t0 = 1.0;
  double beam_angle = 0.0; // rad, probe tilted from the pump axis
  PulseStrength pump;
  PulseStrength probe;
  double reference_dipole_sq = 1.0;

  ModelConfig model;
  EnsembleGeometry geometry;
  double radiative_width = 0.0;

  SweepSpec sweep;
  std::vector<std::string> routes;
  std::uint64_t seed = 1;
  long subsample = 10000;
  long direction_samples = 2000;
  QuadratureSpec quadrature;

  std::string out_path; // empty: stdout
  std::string format = "csv";

  /// Dipole used to turn Omega_R * tau into a field amplitude: the resonant
  /// dipole for the Lorentzian model, reference_dipole_sq otherwise.
  double rabi_dipole_sq() const;
  double field_amplitude(const PulseStrength& s) const;
  double rabi_tau(const PulseStrength& s) const;

  /// Pump along the ensemble axis, probe tilted by beam_angle, probe delay
  /// t0 * duration.
  PulsePair pulse_pair(double t0_value) const;
  PulsePair pulse_pair() const { return pulse_pair(t0); }
};

/// Merges `overrides` over `config` (flags beat file), fills defaults for
/// `command`, validates, and converts to atomic units. Throws ConfigError.
ScenarioConfig resolve_config(const std::string& command, const nlohmann::ordered_json& config,
                              const nlohmann::ordered_json& overrides = nlohmann::ordered_json::object());

/// Parses a JSON document; ConfigError on syntax errors.
nlohmann::ordered_json parse_config_text(const std::string& text);

} // namespace srs

#endif // SRS_SCENARIO_HPP
