#ifndef SRS_RAYLEIGH_HPP
#define SRS_RAYLEIGH_HPP

#include "srs/numerics.hpp"
#include "srs/polarizability.hpp"
#include "srs/pulses.hpp"

#include <complex>

namespace srs {

/// Second-order amplitudes for stimulated emission and absorption of a probe
/// photon by one atom.
struct AmplitudePair {
  std::complex<double> emission{};
  std::complex<double> absorption{};
  double error = 0.0; // absolute, applies to each amplitude
  bool converged = true;

  /// Net single-atom probability of probe-photon emission,
  /// |A_em|^2 - |A_abs|^2; positive means the probe gains.
  double net_probability() const { return std::norm(emission) - std::norm(absorption); }
};

/// Time grid for the direct time-domain evaluation.
struct TimeGrid {
  /// Half-width of the grid beyond the outermost pulse centre, in units of
  /// the longest pulse duration. Must be >= 6.
  double span_durations = 8.0;
  /// Initial step as a fraction of the shortest pulse duration.
  double initial_step = 1.0 / 16.0;
  /// Number of step halvings allowed while chasing refinement_tol.
  int max_refinements = 8;
  /// Converged once halving the step changes the amplitudes by less than
  /// this, relative to the larger amplitude modulus.
  double refinement_tol = 1e-4;

  void validate() const;
};

/// Direct evaluation of the ordered double time integral over t' <= t for a
/// finite level set,
///
///   A = -sum_n |d_0n|^2 Int dt Int^t dt' exp(-(i dE_n + b)(t - t')) [...],
///
/// with the bracket built from the analytic (positive-frequency) fields of
/// the pulses, E+ = 0.5 * envelope * exp(i w (t - delay)). The broadening b
/// is the same one that regularizes DiscreteLevels. The inner integral is
/// propagated with an exponential integrator over piecewise-linear
/// envelopes; the outer one is a trapezoid sum. Brute-force oracle for the
/// spectral route.
AmplitudePair amplitudes_time_domain(const PulsePair& pair, const DiscreteLevels& model,
                                     const TimeGrid& grid = {});

/// A = 2 pi i Int_0^inf dw alpha(w) overlap(w), cut to the window where the
/// pulse spectra are non-negligible (spec.truncation_sigmas / duration around
/// each carrier). Throws DomainError if the window leaves the model's domain.
AmplitudePair amplitudes_frequency_domain(const PulsePair& pair, const PolarizabilityModel& model,
                                          const QuadratureSpec& spec = {});

enum class Route { time, frequency };

struct Probability {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// |A_em|^2 - |A_abs|^2 along the requested route. The time route needs a
/// DiscreteLevels model.
Probability net_probability(const PulsePair& pair, const PolarizabilityModel& model, Route route,
                            const QuadratureSpec& spec = {}, const TimeGrid& grid = {});

/// Dimensionless resonant parameters: t0 = delay/duration,
/// gamma = width*duration, and the two Rabi-frequency products
/// Omega_R * duration with Omega_R = amplitude * |d_01| / 2.
struct ResonantParams {
  double t0 = 0.0;
  double gamma = 1.0;
  double pump_rabi_tau = 0.0;
  double probe_rabi_tau = 0.0;

  void validate() const;
};

/// I(t0) = Int dx exp(-x^2 + i t0 x) / (x^2 + gamma^2/4) on |x| <= truncation_sigmas.
Integral<std::complex<double>> resonant_overlap(double t0, double gamma, const QuadratureSpec& spec = {});

/// dI/dt0 = Int dx i x exp(-x^2 + i t0 x) / (x^2 + gamma^2/4).
Integral<std::complex<double>> resonant_overlap_derivative(double t0, double gamma,
                                                           const QuadratureSpec& spec = {});

/// J(t0, gamma) = -gamma d|I|^2/dt0 = -2 gamma Re(conj(I) I').
Integral<double> J_resonant(double t0, double gamma, const QuadratureSpec& spec = {});

/// (Omega_R tau)^2 (Omega~_R tau)^2 J(t0, gamma).
Probability w_T_resonant(const ResonantParams& params, const QuadratureSpec& spec = {});

/// Large-gamma limit (Omega_R tau)^2 (Omega~_R tau)^2 (16 pi / gamma^3) t0 exp(-t0^2/2).
/// Meaningful for gamma >> 1; not gated.
double w_T_asymptotic(const ResonantParams& params);

/// Linear-response result for equal pulses above threshold:
/// (pi E0^2 E~0^2 / 8) dt exp(-dt^2 / 2 tau^2) (alpha_1 alpha_2' - alpha_2 alpha_1') at w0.
/// Throws DomainError unless the pulses have identical shapes and w0 > E_b.
double w_T_continuum(const PulsePair& pair, const DeltaPotential& model);

/// True when (w0 - E_b) tau >= 10, where the linear expansion of alpha over
/// the pulse bandwidth holds.
bool continuum_expansion_valid(const PulsePair& pair, const DeltaPotential& model);

struct ResonantSetup {
  PulsePair pair;
  ResonantLorentzian model;
};

/// Equal-shape pulse pair and resonant model realizing `params`: both
/// carriers on resonance, width = gamma / duration, amplitudes
/// 2 (Omega_R tau) / (tau |d_01|), probe delay t0 * duration.
ResonantSetup resonant_setup(const ResonantParams& params, double duration, double carrier,
                             double dipole_sq = 1.0);

} // namespace srs

#endif // SRS_RAYLEIGH_HPP
