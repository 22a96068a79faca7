#include "srs/pulses.hpp"

#include "srs/constants.hpp"
#include "srs/errors.hpp"

#include <cmath>

namespace srs {

using constants::pi;

void GaussianPulse::validate() const {
  if (!(duration > 0.0)) throw DomainError("pulse duration must be positive");
  if (!(carrier > 0.0)) throw DomainError("pulse carrier frequency must be positive");
  if (!(amplitude >= 0.0)) throw DomainError("pulse amplitude must be non-negative");
  if (!std::isfinite(delay)) throw DomainError("pulse delay must be finite");
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("pulse direction must be a unit vector");
}

Eigen::Vector3d GaussianPulse::wave_vector() const {
  return (carrier / constants::speed_of_light_au) * direction;
}

double GaussianPulse::envelope(double t) const {
  const double s = (t - delay) / duration;
  return amplitude * std::exp(-0.5 * s * s);
}

double GaussianPulse::field(double t) const { return envelope(t) * std::cos(carrier * (t - delay)); }

std::complex<double> GaussianPulse::analytic_field(double t) const {
  return 0.5 * envelope(t) * std::polar(1.0, carrier * (t - delay));
}

void PulsePair::validate() const {
  pump.validate();
  probe.validate();
  if (pump.delay != 0.0) throw DomainError("pump delay must be zero; the probe carries the delay");
}

bool PulsePair::identical_shapes(double rel_tol) const {
  auto close = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };
  return close(pump.carrier, probe.carrier) && close(pump.duration, probe.duration);
}

std::complex<double> spectrum(const GaussianPulse& p, double omega) {
  const double tau = p.duration;
  const double prefactor = p.amplitude * tau / (2.0 * std::sqrt(2.0 * pi));
  const double up = (omega - p.carrier) * tau;
  const double down = (omega + p.carrier) * tau;
  const double lobes = std::exp(-0.5 * up * up) + std::exp(-0.5 * down * down);
  return prefactor * lobes * std::polar(1.0, -omega * p.delay);
}

std::complex<double> overlap_integrand(const PulsePair& pair, double omega, Branch branch) {
  const auto pump = spectrum(pair.pump, omega);
  const auto probe = spectrum(pair.probe, omega);
  return branch == Branch::emission ? std::conj(pump) * probe : pump * std::conj(probe);
}

double pulse_energy_integral(const GaussianPulse& p) {
  const double wt = p.carrier * p.duration;
  return p.amplitude * p.amplitude * p.duration * std::sqrt(pi) * 0.5 * (1.0 + std::exp(-wt * wt));
}

} // namespace srs
