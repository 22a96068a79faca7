#ifndef SRS_PULSES_HPP
#define SRS_PULSES_HPP

#include <Eigen/Dense>

#include <complex>

namespace srs {

/// Linearly polarized Gaussian pulse, everything in atomic units:
///
///   E(t) = amplitude * exp(-(t - delay)^2 / (2 duration^2)) * cos(carrier (t - delay)).
///
/// The carrier phase is referenced to the pulse centre, so a delay is a pure
/// spectral phase exp(-i w delay). Relative to writing the carrier as
/// cos(carrier t) this differs by the constant exp(i carrier delay), which is
/// common to emission and absorption and drops out of every probability.
///
/// Spectra follow E(t) = Int dw exp(i w t) E_w, i.e.
/// E_w = (1/2pi) Int dt exp(-i w t) E(t).
struct GaussianPulse {
  double amplitude = 0.0;
  double carrier = 1.0;
  double duration = 1.0;
  double delay = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();

  /// Throws DomainError unless duration > 0, carrier > 0, amplitude >= 0 and
  /// |direction| = 1 to 1e-12.
  void validate() const;

  /// True when carrier * duration < 10, below which the rotating-wave
  /// reduction used by the spectral routes is no longer reliable.
  bool few_cycle() const { return carrier * duration < 10.0; }

  Eigen::Vector3d wave_vector() const;

  double envelope(double t) const;
  double field(double t) const;

  /// Positive-frequency part 0.5 * envelope * exp(i carrier (t - delay)).
  std::complex<double> analytic_field(double t) const;
};

/// Pump (delay 0) and probe. Both polarized along the same axis.
struct PulsePair {
  GaussianPulse pump;
  GaussianPulse probe;

  /// Validates both pulses and requires pump.delay == 0.
  void validate() const;

  /// Equal carriers and durations, the restriction under which the closed
  /// forms apply.
  bool identical_shapes(double rel_tol = 1e-12) const;
};

/// Fourier amplitude E_w of the pulse, both spectral lobes included.
std::complex<double> spectrum(const GaussianPulse& p, double omega);

enum class Branch { emission, absorption };

/// conj(E_w) * Etilde_w for emission, E_w * conj(Etilde_w) for absorption
/// (E = pump, Etilde = probe).
std::complex<double> overlap_integrand(const PulsePair& pair, double omega, Branch branch);

/// Int E(t)^2 dt in closed form.
double pulse_energy_integral(const GaussianPulse& p);

} // namespace srs

#endif // SRS_PULSES_HPP
