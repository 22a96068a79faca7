#include "srs/polarizability.hpp"

#include "srs/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace srs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_frequency(double omega) {
  if (!(omega > 0.0)) throw DomainError("polarizability: frequency must be positive");
}

double delta_x(const DeltaPotential& m, double omega, bool strict) {
  m.validate();
  require_positive_frequency(omega);
  const double x = omega / m.binding_energy;
  if (strict ? !(x > 1.0) : !(x >= 1.0)) {
    throw DomainError("delta-potential polarizability is only defined above threshold (x = " +
                      std::to_string(x) + ")");
  }
  return x;
}

} // namespace

void DiscreteLevels::validate() const {
  if (levels.empty()) throw DomainError("discrete level model needs at least one level");
  if (!(broadening > 0.0)) throw DomainError("discrete level broadening must be positive");
  for (const auto& l : levels) {
    if (!(l.transition_energy > 0.0)) throw DomainError("transition energies must be positive");
    if (!(l.dipole_sq >= 0.0)) throw DomainError("dipole strengths must be non-negative");
  }
}

void ResonantLorentzian::validate() const {
  if (!(resonance > 0.0)) throw DomainError("resonance frequency must be positive");
  if (!(dipole_sq > 0.0)) throw DomainError("resonant dipole strength must be positive");
  if (!(width > 0.0)) throw DomainError("resonance width must be positive");
}

void DeltaPotential::validate() const {
  if (!(binding_energy > 0.0)) throw DomainError("binding energy must be positive");
}

std::string model_name(const PolarizabilityModel& model) {
  return std::visit(overloaded{
                        [](const DiscreteLevels&) { return std::string("discrete"); },
                        [](const ResonantLorentzian&) { return std::string("lorentzian"); },
                        [](const DeltaPotential&) { return std::string("delta"); },
                    },
                    model);
}

std::complex<double> alpha(const PolarizabilityModel& model, double omega) {
  return std::visit(
      overloaded{
          [omega](const DiscreteLevels& m) {
            m.validate();
            require_positive_frequency(omega);
            const std::complex<double> ib(0.0, m.broadening);
            std::complex<double> sum{};
            for (const auto& l : m.levels) {
              sum += l.dipole_sq * (1.0 / (l.transition_energy - omega - ib) +
                                    1.0 / (l.transition_energy + omega - ib));
            }
            return sum;
          },
          [omega](const ResonantLorentzian& m) {
            m.validate();
            require_positive_frequency(omega);
            return -m.dipole_sq / std::complex<double>(omega - m.resonance, 0.5 * m.width);
          },
          [omega](const DeltaPotential& m) {
            const double x = delta_x(m, omega, false);
            return delta_a(x, m.branch) / (m.binding_energy * m.binding_energy);
          },
      },
      model);
}

std::complex<double> alpha_prime(const PolarizabilityModel& model, double omega) {
  return std::visit(
      overloaded{
          [omega](const DiscreteLevels& m) {
            m.validate();
            require_positive_frequency(omega);
            const std::complex<double> ib(0.0, m.broadening);
            std::complex<double> sum{};
            for (const auto& l : m.levels) {
              const auto r = l.transition_energy - omega - ib;
              const auto c = l.transition_energy + omega - ib;
              sum += l.dipole_sq * (1.0 / (r * r) - 1.0 / (c * c));
            }
            return sum;
          },
          [omega](const ResonantLorentzian& m) {
            m.validate();
            require_positive_frequency(omega);
            const std::complex<double> d(omega - m.resonance, 0.5 * m.width);
            return m.dipole_sq / (d * d);
          },
          [omega](const DeltaPotential& m) {
            const double x = delta_x(m, omega, true);
            const double eb = m.binding_energy;
            return delta_a_prime(x, m.branch) / (eb * eb * eb);
          },
      },
      model);
}

double fig3_weight(const DeltaPotential& model, double x) {
  if (!(x > 1.0)) throw DomainError("fig3_weight requires x > 1");
  const auto a = delta_a(x, model.branch);
  const auto ap = delta_a_prime(x, model.branch);
  return a.real() * ap.imag() - a.imag() * ap.real();
}

DiscreteLevels load_levels(std::istream& in, double broadening) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  DiscreteLevels out;
  out.broadening = broadening;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("level table: ") + e.what());
    }
    for (const auto& row : j) {
      if (row.is_array() && row.size() == 2) {
        out.levels.push_back({row[0].get<double>(), row[1].get<double>()});
      } else if (row.is_object()) {
        out.levels.push_back({row.at("energy").get<double>(), row.at("dipole_sq").get<double>()});
      } else {
        throw ConfigError("level table: rows must be [energy, dipole_sq] pairs");
      }
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
      for (char& c : line) {
        if (c == ',') c = ' ';
      }
      std::istringstream fields(line);
      Level l;
      if (!(fields >> l.transition_energy >> l.dipole_sq)) {
        throw ConfigError("level table: cannot parse line " + std::to_string(lineno));
      }
      out.levels.push_back(l);
    }
  }
  try {
    out.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("level table: ") + e.what());
  }
  return out;
}

} // namespace srs
