#ifndef SRS_POLARIZABILITY_HPP
#define SRS_POLARIZABILITY_HPP

#include <cmath>
#include <complex>
#include <istream>
#include <string>
#include <variant>
#include <vector>

namespace srs {

struct Level {
  double transition_energy = 0.0; // E_n - E_0
  double dipole_sq = 0.0;         // |d_0n|^2
};

/// Sum over discrete intermediate states, both resonant and counter-rotating
/// terms, with a finite broadening standing in for the vanishing
/// regulator: d^2 [1/(E - w - i b) + 1/(E + w - i b)].
struct DiscreteLevels {
  std::vector<Level> levels;
  double broadening = 0.0;

  void validate() const;
};

/// Single resonance with width put in by hand: -d^2 / ((w - w_res) + i width/2).
struct ResonantLorentzian {
  double resonance = 0.0;
  double dipole_sq = 0.0;
  double width = 0.0;

  void validate() const;
};

enum class DeltaBranch {
  /// Real part -1/x^2 + (4/3)((x+1)^{3/2} - 2)/x^4. This is the analytic
  /// continuation of the below-threshold result, whose static limit is
  /// a(0) = 1/16 and which satisfies the oscillator-strength sum.
  physical,
  /// Real part -1/x^2 - (4/3)((x+1)^{3/2} - 2)/x^4. Has no finite static
  /// limit; kept for comparison with tables built from that expression.
  alternate_sign,
};

/// Zero-range (delta-potential) bound state with binding energy E_b. Above
/// threshold, alpha(w) = a(x) / E_b^2 with x = w / E_b and
/// Im a(x) = (4/3) (x-1)^{3/2} / x^4.
struct DeltaPotential {
  double binding_energy = 0.0;
  DeltaBranch branch = DeltaBranch::physical;

  void validate() const;
};

using PolarizabilityModel = std::variant<DiscreteLevels, ResonantLorentzian, DeltaPotential>;

std::string model_name(const PolarizabilityModel& model);

/// Dimensionless delta-potential polarizability a(x), x >= 1.
template <typename Scalar>
std::complex<Scalar> delta_a(Scalar x, DeltaBranch branch) {
  const Scalar sign = branch == DeltaBranch::physical ? Scalar(1) : Scalar(-1);
  const Scalar x2 = x * x;
  const Scalar x4 = x2 * x2;
  const Scalar up = std::pow(x + 1, Scalar(1.5));
  const Scalar down = std::pow(x - 1, Scalar(1.5));
  const Scalar re = -1 / x2 + sign * Scalar(4) / 3 * (up - 2) / x4;
  const Scalar im = Scalar(4) / 3 * down / x4;
  return {re, im};
}

/// da/dx, x > 1.
template <typename Scalar>
std::complex<Scalar> delta_a_prime(Scalar x, DeltaBranch branch) {
  const Scalar sign = branch == DeltaBranch::physical ? Scalar(1) : Scalar(-1);
  const Scalar x3 = x * x * x;
  const Scalar x4 = x3 * x;
  const Scalar x5 = x4 * x;
  const Scalar up = std::pow(x + 1, Scalar(1.5));
  const Scalar down = std::pow(x - 1, Scalar(1.5));
  const Scalar re =
      2 / x3 + sign * Scalar(4) / 3 * (Scalar(1.5) * std::sqrt(x + 1) / x4 - 4 * (up - 2) / x5);
  const Scalar im = Scalar(4) / 3 * (Scalar(1.5) * std::sqrt(x - 1) / x4 - 4 * down / x5);
  return {re, im};
}

/// Complex polarizability alpha(w) = alpha_1 + i alpha_2 (atomic units).
/// Throws DomainError for w <= 0 or, for DeltaPotential, w < E_b.
std::complex<double> alpha(const PolarizabilityModel& model, double omega);

/// d alpha / d w from the closed forms. DeltaPotential requires w > E_b.
std::complex<double> alpha_prime(const PolarizabilityModel& model, double omega);

/// Re a Im a' - Im a Re a' of the dimensionless delta-potential a(x);
/// sets the carrier dependence of the above-threshold net probability.
double fig3_weight(const DeltaPotential& model, double x);

/// Reads a level table: one "transition_energy dipole_sq" pair per line
/// (atomic units); blank lines and '#' comments are skipped. Also accepts a
/// JSON array of [energy, dipole_sq] pairs or {"energy":..,"dipole_sq":..}
/// objects when the first non-space character is '['.
DiscreteLevels load_levels(std::istream& in, double broadening);

} // namespace srs

#endif // SRS_POLARIZABILITY_HPP
