#ifndef SRS_NUMERICS_HPP
#define SRS_NUMERICS_HPP

#include <Eigen/Dense>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <type_traits>
#include <vector>

namespace srs {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  /// Half-width of the finite integration window, in units of the
  /// integrand's Gaussian decay scale.
  double truncation_sigmas = 8.0;

  /// Throws std::invalid_argument unless tolerances are positive,
  /// max_subdivisions >= 1 and truncation_sigmas >= 6.
  void validate() const;
};

/// Result of a quadrature. `converged` is false whenever the reported error
/// exceeds max(abs_tol, rel_tol * |value|); the value is then the best
/// estimate reached within the subdivision budget.
template <typename T>
struct Integral {
  T value{};
  double error = 0.0;
  bool converged = true;
  int intervals = 0;
};

/// Relative mass of exp(-u^2) outside |u| <= sigmas, which bounds the error of
/// cutting a Gaussian-weighted integrand to the window.
double gaussian_tail_fraction(double sigmas);

namespace detail {

template <typename T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

template <typename F>
auto kronrod15(const F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  using T = std::decay_t<decltype(f(a))>;
  static const auto& x = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = G::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T f0 = f(c);
  T kronrod = wk[0] * f0;
  T gauss = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const T sum = f(c - h * x[i]) + f(c + h * x[i]);
    kronrod += wk[i] * sum;
    if (i % 2 == 0) gauss += wg[i / 2] * sum;
  }
  return Panel<T>{a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod quadrature of a real- or
/// complex-valued integrand over [a, b]. Interior `breakpoints` inside (a, b)
/// become forced panel edges, which is how narrow peaks are kept from being
/// straddled by the initial panels.
template <typename F>
auto integrate(const F& f, double a, double b, const QuadratureSpec& spec,
               std::span<const double> breakpoints = {}) {
  using T = std::decay_t<decltype(f(a))>;
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("integrate: require a < b");

  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto worse = [](const detail::Panel<T>& l, const detail::Panel<T>& r) {
    return l.error < r.error;
  };
  std::vector<detail::Panel<T>> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    heap.push_back(detail::kronrod15(f, edges[i], edges[i + 1]));
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&heap] {
    T value{};
    double error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  Integral<T> out;
  while (true) {
    const auto [value, error] = totals();
    out.value = value;
    out.error = error;
    out.intervals = static_cast<int>(heap.size());
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (error <= tol) {
      out.converged = true;
      break;
    }
    if (out.intervals >= spec.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const auto worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), worse);
      out.converged = false;
      break;
    }
    heap.push_back(detail::kronrod15(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(detail::kronrod15(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), worse);
  }
  return out;
}

using ComplexIntegrand = std::function<std::complex<double>(double)>;

Integral<std::complex<double>> integrate_complex(const ComplexIntegrand& f, double a, double b,
                                                 const QuadratureSpec& spec,
                                                 std::span<const double> breakpoints = {});

/// (g(x+h) - g(x-h)) / 2h. Test-side oracle for analytic derivatives.
double derivative_central(const std::function<double(double)>& g, double x, double h);

/// Reproducible random stream keyed by (seed, stream_id). Distinct stream ids
/// give statistically independent sequences; identical keys give identical
/// sequences on every platform (mt19937_64 plus explicit bit-to-double
/// conversion, no implementation-defined distributions).
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// n unit vectors uniform on the sphere, one per column.
Eigen::Matrix3Xd sample_directions(Eigen::Index n, RngStream& rng);

/// n unit vectors uniform over the zone of the sphere whose angle theta to
/// `axis` satisfies u_min <= 1 - cos(theta) <= u_max. The zone's solid angle
/// is 2*pi*(u_max - u_min).
Eigen::Matrix3Xd sample_directions_in_zone(Eigen::Index n, RngStream& rng,
                                           const Eigen::Vector3d& axis, double u_min,
                                           double u_max);

} // namespace srs

#endif // SRS_NUMERICS_HPP
