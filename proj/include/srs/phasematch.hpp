#ifndef SRS_PHASEMATCH_HPP
#define SRS_PHASEMATCH_HPP

#include "srs/numerics.hpp"
#include "srs/pulses.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace srs {

/// Uniform-density focal cylinder: diameter `waist`, length `length` along
/// `axis` (the pump direction), atom density `density`. Atom bookkeeping uses
/// the volume waist^2 * length.
struct EnsembleGeometry {
  double waist = 0.0;
  double length = 0.0;
  double density = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();

  void validate() const;
  double volume() const { return waist * waist * length; }
  double atom_count() const { return density * volume(); }
};

/// Explicit atom positions (one per column) standing for `represented`
/// atoms. When fewer columns than represented atoms are stored, phase sums
/// are rescaled: pair (coherent) terms by N(N-1)/(N'(N'-1)) ~ (N/N')^2 and
/// the diagonal (incoherent) floor by N/N'.
struct AtomPositions {
  Eigen::Matrix3Xd positions;
  double represented = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  Eigen::Index sampled() const { return positions.cols(); }
  bool subsampled() const { return static_cast<double>(sampled()) != represented; }
  double coherent_scale() const;
  double incoherent_scale() const;
};

/// Positions drawn uniformly inside the focal cylinder. `count` = 0 draws
/// round(N_a) atoms; otherwise a subsample of `count` atoms representing
/// N_a.
AtomPositions sample_positions(const EnsembleGeometry& geometry, Eigen::Index count, RngStream rng);

/// |sum_j exp(i dk . R_j)|^2 over the stored columns.
double phase_sum_sq(const Eigen::Matrix3Xd& positions, const Eigen::Vector3d& dk);

/// Rescaled estimate of the full-ensemble phase-matching factor from a raw
/// phase sum over the stored atoms. Unbiased; may leave [0, N^2] by noise.
double rescale_phase_sum(const AtomPositions& atoms, double raw);

/// Phase-matching factor |sum_j exp(i dk . R_j)|^2. Exact when every atom is
/// stored; otherwise the rescaled estimate clamped to [0, N^2].
double F_factor(const AtomPositions& atoms, const Eigen::Vector3d& dk);

struct SolidAngleEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  long samples = 0;
  bool converged = true;
  double coherent_scale = 1.0;
  double incoherent_scale = 1.0;
};

/// Int F(n) dOmega_n with dk = k (axis - n), estimated by stratified Monte
/// Carlo over nested zones around `axis`. The innermost zone has half-angle
/// 2 / (k * lateral_size) and each next one is four times wider, so the
/// forward coherent lobe gets its own samples. A single atom gives exactly
/// 4 pi. `n_samples` must be >= 100. `target_rel_error`, when positive,
/// marks the estimate not converged if the relative standard error exceeds it.
SolidAngleEstimate F_sp(const AtomPositions& atoms, const Eigen::Vector3d& axis, double k,
                        double lateral_size, long n_samples, RngStream rng,
                        double target_rel_error = 0.0);

/// Convenience: samples `subsample` positions from the geometry (seeded from
/// `rng`) and integrates with a separate stream.
SolidAngleEstimate F_sp(const EnsembleGeometry& geometry, double k, Eigen::Index subsample,
                        long n_samples, RngStream rng, double target_rel_error = 0.0);

struct WidthEstimate {
  double width = 0.0;          // Gamma_r * F_sp / N_a
  double standard_error = 0.0;
  double shortcut = 0.0;       // Gamma_r * (d/L)^2 * N_a
  SolidAngleEstimate f_sp;
};

/// Collective (phase-matching-modified) radiative width Gamma_r F_sp / N_a,
/// with F_sp normalized so that one atom gives 4 pi.
WidthEstimate effective_width(const EnsembleGeometry& geometry, double k, double radiative_width,
                              Eigen::Index subsample, long n_samples, RngStream rng);

/// Gamma_r (d/L)^2 N_a.
double effective_width_shortcut(const EnsembleGeometry& geometry, double radiative_width);

/// Length of the ensemble projected on dk compared with 1/|dk|: the ratio
/// |dk| * extent. F stays near N^2 while this is <~ 1.
double coherence_parameter(const EnsembleGeometry& geometry, const Eigen::Vector3d& dk);

/// Probe gain 8 pi w~0 n_a (F/N_a) w_T / E~0^2 (atomic units, hbar = 1).
/// Throws DomainError for a zero probe amplitude.
double gain(double net_probability, const EnsembleGeometry& geometry, const GaussianPulse& probe,
            double F_over_Na);

/// Wave-vector mismatch k_pump - k_probe.
Eigen::Vector3d wave_vector_mismatch(const PulsePair& pair);

} // namespace srs

#endif // SRS_PHASEMATCH_HPP
