#include "srs/numerics.hpp"

#include "srs/constants.hpp"

#include <stdexcept>

namespace srs {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
  if (!(truncation_sigmas >= 6.0)) throw std::invalid_argument("truncation_sigmas must be >= 6");
}

double gaussian_tail_fraction(double sigmas) { return std::erfc(sigmas); }

Integral<std::complex<double>> integrate_complex(const ComplexIntegrand& f, double a, double b,
                                                 const QuadratureSpec& spec,
                                                 std::span<const double> breakpoints) {
  return integrate(f, a, b, spec, breakpoints);
}

double derivative_central(const std::function<double(double)>& g, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("derivative_central: h must be positive");
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id),
      engine_(splitmix64(seed ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL))) {}

Eigen::Matrix3Xd sample_directions(Eigen::Index n, RngStream& rng) {
  return sample_directions_in_zone(n, rng, Eigen::Vector3d::UnitZ(), 0.0, 2.0);
}

Eigen::Matrix3Xd sample_directions_in_zone(Eigen::Index n, RngStream& rng,
                                           const Eigen::Vector3d& axis, double u_min,
                                           double u_max) {
  if (n < 0) throw std::invalid_argument("sample count must be non-negative");
  if (!(u_min >= 0.0 && u_max <= 2.0 && u_min <= u_max)) {
    throw std::invalid_argument("zone bounds must satisfy 0 <= u_min <= u_max <= 2");
  }
  const Eigen::Quaterniond to_axis =
      Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), axis.normalized());

  Eigen::Matrix3Xd out(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // u = 1 - cos(theta) is uniform for uniform solid angle.
    const double u = rng.uniform(u_min, u_max);
    const double phi = rng.uniform(0.0, 2.0 * constants::pi);
    const double sin_theta = std::sqrt(std::max(0.0, u * (2.0 - u)));
    const Eigen::Vector3d local(sin_theta * std::cos(phi), sin_theta * std::sin(phi), 1.0 - u);
    out.col(i) = to_axis * local;
  }
  return out;
}

} // namespace srs
