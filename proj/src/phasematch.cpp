#include "srs/phasematch.hpp"

#include "srs/constants.hpp"
#include "srs/errors.hpp"

#include <cmath>
#include <vector>

namespace srs {

using constants::pi;

namespace {

// Largest explicit ensemble we are willing to materialize.
constexpr double kMaxExplicitAtoms = 2e7;

} // namespace

void EnsembleGeometry::validate() const {
  if (!(waist > 0.0) || !(length > 0.0) || !(density > 0.0)) {
    throw DomainError("ensemble waist, length and density must be positive");
  }
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw DomainError("ensemble axis must be a unit vector");
  if (!(atom_count() >= 1.0)) throw DomainError("ensemble must contain at least one atom");
}

double AtomPositions::coherent_scale() const {
  const double n = static_cast<double>(sampled());
  if (!subsampled()) return 1.0;
  return represented * (represented - 1.0) / (n * (n - 1.0));
}

double AtomPositions::incoherent_scale() const {
  return represented / static_cast<double>(sampled());
}

AtomPositions sample_positions(const EnsembleGeometry& geometry, Eigen::Index count, RngStream rng) {
  geometry.validate();
  const double total = geometry.atom_count();
  AtomPositions out;
  out.seed = rng.seed();
  out.stream_id = rng.stream_id();
  if (count == 0) {
    if (total > kMaxExplicitAtoms) {
      throw DomainError("ensemble too large to enumerate; request a subsample");
    }
    count = static_cast<Eigen::Index>(std::llround(total));
    out.represented = static_cast<double>(count);
  } else {
    if (count < 2 && static_cast<double>(count) < total) {
      throw DomainError("a subsample needs at least two atoms");
    }
    if (static_cast<double>(count) > total) {
      throw DomainError("subsample larger than the ensemble");
    }
    out.represented = total;
  }

  const Eigen::Quaterniond to_axis =
      Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), geometry.axis);
  const double radius = 0.5 * geometry.waist;
  out.positions.resize(3, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, 2.0 * pi);
    const double z = rng.uniform(-0.5, 0.5) * geometry.length;
    out.positions.col(j) = to_axis * Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

double phase_sum_sq(const Eigen::Matrix3Xd& positions, const Eigen::Vector3d& dk) {
  const Eigen::ArrayXd phase = (dk.transpose() * positions).transpose().array();
  const double re = phase.cos().sum();
  const double im = phase.sin().sum();
  return re * re + im * im;
}

double rescale_phase_sum(const AtomPositions& atoms, double raw) {
  if (!atoms.subsampled()) return raw;
  const double n = static_cast<double>(atoms.sampled());
  return atoms.represented + atoms.coherent_scale() * (raw - n);
}

double F_factor(const AtomPositions& atoms, const Eigen::Vector3d& dk) {
  if (atoms.sampled() == 0) throw DomainError("phase-matching factor needs at least one atom");
  const double raw = phase_sum_sq(atoms.positions, dk);
  if (!atoms.subsampled()) return raw;
  const double n = atoms.represented;
  return std::clamp(rescale_phase_sum(atoms, raw), 0.0, n * n);
}

SolidAngleEstimate F_sp(const AtomPositions& atoms, const Eigen::Vector3d& axis, double k,
                        double lateral_size, long n_samples, RngStream rng,
                        double target_rel_error) {
  if (atoms.sampled() == 0) throw DomainError("F_sp needs at least one atom");
  if (n_samples < 100) throw DomainError("F_sp needs at least 100 direction samples");
  if (!(k > 0.0) || !(lateral_size > 0.0)) throw DomainError("F_sp needs positive k and size");

  // Zone edges in u = 1 - cos(theta).
  std::vector<double> edges{0.0};
  for (double theta = 2.0 / (k * lateral_size); theta < pi; theta *= 4.0) {
    edges.push_back(2.0 * std::pow(std::sin(0.5 * theta), 2));
  }
  edges.push_back(2.0);

  const Eigen::Vector3d n_axis = axis.normalized();
  const auto zones = static_cast<long>(edges.size() - 1);
  SolidAngleEstimate out;
  out.coherent_scale = atoms.coherent_scale();
  out.incoherent_scale = atoms.incoherent_scale();
  double variance = 0.0;
  for (long z = 0; z < zones; ++z) {
    const long count = n_samples / zones + (z < n_samples % zones ? 1 : 0);
    const double omega = 2.0 * pi * (edges[z + 1] - edges[z]);
    const Eigen::Matrix3Xd dirs = sample_directions_in_zone(count, rng, n_axis, edges[z], edges[z + 1]);
    double mean = 0.0;
    double m2 = 0.0;
    for (long i = 0; i < count; ++i) {
      const Eigen::Vector3d dk = k * (n_axis - dirs.col(i));
      const double f = rescale_phase_sum(atoms, phase_sum_sq(atoms.positions, dk));
      const double delta = f - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (f - mean);
    }
    out.value += omega * mean;
    if (count > 1) variance += omega * omega * m2 / (static_cast<double>(count - 1) * count);
    out.samples += count;
  }
  out.standard_error = std::sqrt(variance);
  if (target_rel_error > 0.0) {
    out.converged = out.standard_error <= target_rel_error * std::abs(out.value);
  }
  return out;
}

SolidAngleEstimate F_sp(const EnsembleGeometry& geometry, double k, Eigen::Index subsample,
                        long n_samples, RngStream rng, double target_rel_error) {
  const auto atoms = sample_positions(
      geometry, subsample, RngStream(rng.seed(), 2 * rng.stream_id()));
  return F_sp(atoms, geometry.axis, k, 0.5 * geometry.waist, n_samples,
              RngStream(rng.seed(), 2 * rng.stream_id() + 1), target_rel_error);
}

WidthEstimate effective_width(const EnsembleGeometry& geometry, double k, double radiative_width,
                              Eigen::Index subsample, long n_samples, RngStream rng) {
  if (!(radiative_width > 0.0)) throw DomainError("radiative width must be positive");
  WidthEstimate out;
  out.f_sp = F_sp(geometry, k, subsample, n_samples, rng);
  const double n = geometry.atom_count();
  out.width = radiative_width * out.f_sp.value / n;
  out.standard_error = radiative_width * out.f_sp.standard_error / n;
  out.shortcut = effective_width_shortcut(geometry, radiative_width);
  return out;
}

double effective_width_shortcut(const EnsembleGeometry& geometry, double radiative_width) {
  geometry.validate();
  const double ratio = geometry.waist / geometry.length;
  return radiative_width * ratio * ratio * geometry.atom_count();
}

double coherence_parameter(const EnsembleGeometry& geometry, const Eigen::Vector3d& dk) {
  const double q = dk.norm();
  if (q == 0.0) return 0.0;
  const double c = std::abs(dk.dot(geometry.axis)) / q;
  const double extent = geometry.length * c + geometry.waist * std::sqrt(std::max(0.0, 1.0 - c * c));
  return q * extent;
}

double gain(double net_probability, const EnsembleGeometry& geometry, const GaussianPulse& probe,
            double F_over_Na) {
  if (!(probe.amplitude > 0.0)) throw DomainError("gain needs a non-zero probe amplitude");
  return 8.0 * pi * probe.carrier * geometry.density * F_over_Na * net_probability /
         (probe.amplitude * probe.amplitude);
}

Eigen::Vector3d wave_vector_mismatch(const PulsePair& pair) {
  return pair.pump.wave_vector() - pair.probe.wave_vector();
}

} // namespace srs
