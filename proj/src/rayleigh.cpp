#include "srs/rayleigh.hpp"

#include "srs/constants.hpp"
#include "srs/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace srs {

using constants::pi;
using cd = std::complex<double>;

void TimeGrid::validate() const {
  if (!(span_durations >= 6.0)) throw DomainError("time grid must span at least 6 durations");
  if (!(initial_step > 0.0)) throw DomainError("time grid step must be positive");
  if (max_refinements < 0) throw DomainError("max_refinements must be non-negative");
  if (!(refinement_tol > 0.0)) throw DomainError("refinement tolerance must be positive");
}

void ResonantParams::validate() const {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!std::isfinite(t0) || !std::isfinite(pump_rabi_tau) || !std::isfinite(probe_rabi_tau)) {
    throw DomainError("resonant parameters must be finite");
  }
}

namespace {

/// Exponential-integrator weights for Int_0^h exp(-z (h - u)) b(u) du with b
/// linear between its end values: w0 * b(0) + w1 * b(h).
std::pair<cd, cd> linear_exp_weights(cd z, double h) {
  const cd q = z * h;
  if (std::abs(q) < 0.5) {
    // w0/h = sum (-q)^n (n+1)/(n+2)!,  w1/h = sum (-q)^n / (n+2)!
    cd w0{}, w1{};
    cd term = 1.0;
    double fact = 2.0; // (n+2)!
    for (int n = 0; n < 16; ++n) {
      w0 += term * (n + 1.0) / fact;
      w1 += term / fact;
      term *= -q;
      fact *= n + 3.0;
    }
    return {h * w0, h * w1};
  }
  const cd e = std::exp(-q);
  const cd w0 = h * (1.0 - e * (1.0 + q)) / (q * q);
  const cd w1 = h * (1.0 - e) / q - w0;
  return {w0, w1};
}

/// Slowly varying factor of the analytic field: E+(t) = slow(t) exp(i w t).
Eigen::ArrayXcd analytic_slow(const GaussianPulse& p, const Eigen::ArrayXd& t) {
  const cd phase = std::polar(0.5, -p.carrier * p.delay);
  const Eigen::ArrayXd s = (t - p.delay) / p.duration;
  return (p.amplitude * (-0.5 * s.square()).exp()).cast<cd>() * phase;
}

/// Int dt a(t) e^{i mu t} Int^t dt' e^{-k (t - t')} b(t') e^{i nu t'} on a
/// uniform grid starting where both envelopes have vanished.
cd ordered_term(const Eigen::ArrayXd& t, const Eigen::ArrayXcd& a, double mu,
                const Eigen::ArrayXcd& b, double nu, cd k) {
  const Eigen::Index n = t.size();
  const double h = t(1) - t(0);
  const cd z = k + cd(0.0, nu);
  const cd decay = std::exp(-z * h);
  const auto [w0, w1] = linear_exp_weights(z, h);

  cd inner = 0.0;
  cd outer = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j > 0) inner = decay * inner + w0 * b(j - 1) + w1 * b(j);
    const double weight = (j == 0 || j == n - 1) ? 0.5 * h : h;
    outer += weight * a(j) * std::polar(1.0, (mu + nu) * t(j)) * inner;
  }
  return outer;
}

AmplitudePair time_domain_once(const PulsePair& pair, const DiscreteLevels& model, double step,
                               double span) {
  const double lo = std::min(0.0, pair.probe.delay) - span;
  const double hi = std::max(0.0, pair.probe.delay) + span;
  const auto count = static_cast<Eigen::Index>(std::ceil((hi - lo) / step)) + 1;
  const Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(count, lo, hi);

  const Eigen::ArrayXcd pump_plus = analytic_slow(pair.pump, t);
  const Eigen::ArrayXcd probe_plus = analytic_slow(pair.probe, t);
  const Eigen::ArrayXcd pump_minus = pump_plus.conjugate();
  const Eigen::ArrayXcd probe_minus = probe_plus.conjugate();
  const double wp = pair.pump.carrier;
  const double wq = pair.probe.carrier;

  AmplitudePair out;
  for (const auto& level : model.levels) {
    const cd k(model.broadening, level.transition_energy);
    const cd em = ordered_term(t, probe_plus, wq, pump_minus, -wp, k) +
                  ordered_term(t, pump_minus, -wp, probe_plus, wq, k);
    const cd ab = ordered_term(t, pump_plus, wp, probe_minus, -wq, k) +
                  ordered_term(t, probe_minus, -wq, pump_plus, wp, k);
    out.emission -= level.dipole_sq * em;
    out.absorption -= level.dipole_sq * ab;
  }
  return out;
}

struct Window {
  double lo;
  double hi;
};

Window spectral_window(const PulsePair& pair, double sigmas) {
  const auto& a = pair.pump;
  const auto& b = pair.probe;
  const double lo = std::min(a.carrier - sigmas / a.duration, b.carrier - sigmas / b.duration);
  const double hi = std::max(a.carrier + sigmas / a.duration, b.carrier + sigmas / b.duration);
  return {std::max(lo, 0.0), hi};
}

} // namespace

AmplitudePair amplitudes_time_domain(const PulsePair& pair, const DiscreteLevels& model,
                                     const TimeGrid& grid) {
  pair.validate();
  model.validate();
  grid.validate();
  if (pair.pump.amplitude == 0.0 || pair.probe.amplitude == 0.0) return {};

  const double longest = std::max(pair.pump.duration, pair.probe.duration);
  const double shortest = std::min(pair.pump.duration, pair.probe.duration);
  const double span = grid.span_durations * longest;

  double step = grid.initial_step * shortest;
  AmplitudePair previous = time_domain_once(pair, model, step, span);
  for (int r = 0; r < grid.max_refinements; ++r) {
    step *= 0.5;
    AmplitudePair current = time_domain_once(pair, model, step, span);
    const double scale = std::max(std::abs(current.emission), std::abs(current.absorption));
    const double change = std::max(std::abs(current.emission - previous.emission),
                                   std::abs(current.absorption - previous.absorption));
    current.error = change;
    current.converged = change <= grid.refinement_tol * scale;
    if (current.converged) return current;
    previous = current;
  }
  previous.converged = false;
  return previous;
}

AmplitudePair amplitudes_frequency_domain(const PulsePair& pair, const PolarizabilityModel& model,
                                          const QuadratureSpec& spec) {
  pair.validate();
  spec.validate();
  if (pair.pump.amplitude == 0.0 || pair.probe.amplitude == 0.0) return {};

  const auto [lo, hi] = spectral_window(pair, spec.truncation_sigmas);
  std::vector<double> breaks{pair.pump.carrier, pair.probe.carrier};
  if (const auto* lor = std::get_if<ResonantLorentzian>(&model)) {
    lor->validate();
    breaks.push_back(lor->resonance);
  } else if (const auto* lev = std::get_if<DiscreteLevels>(&model)) {
    lev->validate();
    for (const auto& l : lev->levels) breaks.push_back(l.transition_energy);
  } else if (const auto* delta = std::get_if<DeltaPotential>(&model)) {
    delta->validate();
    if (lo <= delta->binding_energy) {
      throw DomainError("spectral window reaches below the ionization threshold");
    }
  }

  // Unit-amplitude spectra keep the tolerances meaningful for weak fields.
  PulsePair unit = pair;
  unit.pump.amplitude = 1.0;
  unit.probe.amplitude = 1.0;
  const double scale = pair.pump.amplitude * pair.probe.amplitude;

  auto branch_integral = [&](Branch branch) {
    return integrate(
        [&](double w) { return alpha(model, w) * overlap_integrand(unit, w, branch); }, lo, hi, spec,
        breaks);
  };
  const auto em = branch_integral(Branch::emission);
  const auto ab = branch_integral(Branch::absorption);

  const cd factor = cd(0.0, 2.0 * pi) * scale;
  AmplitudePair out;
  out.emission = factor * em.value;
  out.absorption = factor * ab.value;
  out.error = std::abs(factor) * std::max(em.error, ab.error);
  out.converged = em.converged && ab.converged;
  return out;
}

Probability net_probability(const PulsePair& pair, const PolarizabilityModel& model, Route route,
                            const QuadratureSpec& spec, const TimeGrid& grid) {
  AmplitudePair amps;
  if (route == Route::time) {
    const auto* levels = std::get_if<DiscreteLevels>(&model);
    if (levels == nullptr) throw DomainError("time-domain route requires a discrete level model");
    amps = amplitudes_time_domain(pair, *levels, grid);
  } else {
    amps = amplitudes_frequency_domain(pair, model, spec);
  }
  const double err =
      2.0 * amps.error * (std::abs(amps.emission) + std::abs(amps.absorption)) + 2.0 * amps.error * amps.error;
  return {amps.net_probability(), err, amps.converged};
}

Integral<cd> resonant_overlap(double t0, double gamma, const QuadratureSpec& spec) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const double b2 = 0.25 * gamma * gamma;
  const double edge = spec.truncation_sigmas;
  const double peak[] = {0.0};
  return integrate(
      [=](double x) { return std::polar(std::exp(-x * x) / (x * x + b2), t0 * x); }, -edge, edge, spec,
      peak);
}

Integral<cd> resonant_overlap_derivative(double t0, double gamma, const QuadratureSpec& spec) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const double b2 = 0.25 * gamma * gamma;
  const double edge = spec.truncation_sigmas;
  const double peak[] = {0.0};
  return integrate(
      [=](double x) {
        return cd(0.0, x) * std::polar(std::exp(-x * x) / (x * x + b2), t0 * x);
      },
      -edge, edge, spec, peak);
}

Integral<double> J_resonant(double t0, double gamma, const QuadratureSpec& spec) {
  const auto i0 = resonant_overlap(t0, gamma, spec);
  const auto i1 = resonant_overlap_derivative(t0, gamma, spec);
  Integral<double> out;
  out.value = -2.0 * gamma * std::real(std::conj(i0.value) * i1.value);
  out.error = 2.0 * gamma * (std::abs(i1.value) * i0.error + std::abs(i0.value) * i1.error);
  out.converged = i0.converged && i1.converged;
  out.intervals = i0.intervals + i1.intervals;
  return out;
}

Probability w_T_resonant(const ResonantParams& params, const QuadratureSpec& spec) {
  params.validate();
  const double rabi = params.pump_rabi_tau * params.pump_rabi_tau * params.probe_rabi_tau *
                      params.probe_rabi_tau;
  if (rabi == 0.0) return {};
  const auto j = J_resonant(params.t0, params.gamma, spec);
  return {rabi * j.value, rabi * j.error, j.converged};
}

double w_T_asymptotic(const ResonantParams& params) {
  params.validate();
  const double rabi = params.pump_rabi_tau * params.pump_rabi_tau * params.probe_rabi_tau *
                      params.probe_rabi_tau;
  const double g3 = params.gamma * params.gamma * params.gamma;
  return rabi * 16.0 * pi / g3 * params.t0 * std::exp(-0.5 * params.t0 * params.t0);
}

double w_T_continuum(const PulsePair& pair, const DeltaPotential& model) {
  pair.validate();
  model.validate();
  if (!pair.identical_shapes()) {
    throw DomainError("continuum closed form requires equal carriers and durations");
  }
  const double w0 = pair.pump.carrier;
  const double tau = pair.pump.duration;
  const double dt = pair.probe.delay;
  const auto a = alpha(model, w0);
  const auto ap = alpha_prime(model, w0);
  const double e2 = pair.pump.amplitude * pair.pump.amplitude;
  const double p2 = pair.probe.amplitude * pair.probe.amplitude;
  const double weight = a.real() * ap.imag() - a.imag() * ap.real();
  return pi * e2 * p2 / 8.0 * dt * std::exp(-0.5 * dt * dt / (tau * tau)) * weight;
}

bool continuum_expansion_valid(const PulsePair& pair, const DeltaPotential& model) {
  return (pair.pump.carrier - model.binding_energy) * pair.pump.duration >= 10.0;
}

ResonantSetup resonant_setup(const ResonantParams& params, double duration, double carrier,
                             double dipole_sq) {
  params.validate();
  if (!(duration > 0.0) || !(carrier > 0.0) || !(dipole_sq > 0.0)) {
    throw DomainError("resonant setup needs positive duration, carrier and dipole");
  }
  const double d = std::sqrt(dipole_sq);
  ResonantSetup s;
  s.model = {carrier, dipole_sq, params.gamma / duration};
  s.pair.pump = {2.0 * params.pump_rabi_tau / (duration * d), carrier, duration, 0.0,
                 Eigen::Vector3d::UnitZ()};
  s.pair.probe = {2.0 * params.probe_rabi_tau / (duration * d), carrier, duration,
                  params.t0 * duration, Eigen::Vector3d::UnitZ()};
  return s;
}

} // namespace srs
