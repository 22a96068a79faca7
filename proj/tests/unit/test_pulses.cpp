#include "srs/constants.hpp"
#include "srs/errors.hpp"
#include "srs/numerics.hpp"
#include "srs/pulses.hpp"

#include <doctest.h>

#include <cmath>

using namespace srs;
using constants::pi;

namespace {

GaussianPulse pulse(double delay = 0.0) { return {0.3, 2.0, 5.0, delay, Eigen::Vector3d::UnitZ()}; }

// (1/2pi) Int dt exp(-i w t) E(t), by direct quadrature.
std::complex<double> direct_spectrum(const GaussianPulse& p, double w) {
  auto f = [&](double t) { return std::polar(p.field(t), -w * t) / (2 * pi); };
  return integrate(f, p.delay - 12 * p.duration, p.delay + 12 * p.duration, {}).value;
}

} // namespace

TEST_CASE("closed-form spectrum matches the Fourier integral") {
  for (double delay : {0.0, 7.5}) {
    const auto p = pulse(delay);
    for (double w : {-2.1, 0.0, 1.7, 2.0, 2.3}) {
      CHECK(std::abs(spectrum(p, w) - direct_spectrum(p, w)) < 1e-10);
    }
  }
}

TEST_CASE("delay enters as a pure spectral phase") {
  const auto p0 = pulse();
  const auto p1 = pulse(3.0);
  for (double w : {1.8, 2.0, 2.2}) {
    CHECK(std::abs(spectrum(p1, w) - spectrum(p0, w) * std::polar(1.0, -w * 3.0)) < 1e-14);
  }
}

TEST_CASE("Parseval") {
  const auto p = pulse(1.0);
  auto f = [&](double w) { return std::norm(spectrum(p, w)); };
  const double half = integrate(f, 0.0, 2.0 + 10.0 / p.duration, {}).value;
  CHECK(2 * pi * 2 * half == doctest::Approx(pulse_energy_integral(p)).epsilon(1e-8));
  const double direct =
      integrate([&](double t) { return p.field(t) * p.field(t); }, -60.0, 60.0, {}).value;
  CHECK(pulse_energy_integral(p) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("analytic field carries half the envelope") {
  const auto p = pulse(2.0);
  for (double t : {-3.0, 0.5, 2.0, 6.0}) {
    CHECK(2 * p.analytic_field(t).real() == doctest::Approx(p.field(t)).epsilon(1e-13));
    CHECK(std::abs(p.analytic_field(t)) == doctest::Approx(0.5 * p.envelope(t)).epsilon(1e-13));
  }
}

TEST_CASE("overlap integrands are conjugate pairs") {
  const PulsePair pair{pulse(), pulse(4.0)};
  const double w = 2.05;
  CHECK(std::abs(overlap_integrand(pair, w, Branch::emission) -
                 std::conj(overlap_integrand(pair, w, Branch::absorption))) < 1e-15);
  CHECK(std::abs(overlap_integrand(pair, w, Branch::emission) -
                 std::conj(spectrum(pair.pump, w)) * spectrum(pair.probe, w)) < 1e-15);
}

TEST_CASE("pulse validation") {
  auto p = pulse();
  CHECK_NOTHROW(p.validate());
  CHECK_FALSE(p.few_cycle());
  p.duration = 3.0;
  CHECK(p.few_cycle());
  p.duration = 100.0;
  CHECK_FALSE(p.few_cycle());
  p.duration = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = pulse();
  p.direction = {1, 1, 0};
  CHECK_THROWS_AS(p.validate(), DomainError);
  PulsePair pair{pulse(1.0), pulse()};
  CHECK_THROWS_AS(pair.validate(), DomainError);
  PulsePair ok{pulse(), pulse(1.0)};
  CHECK(ok.identical_shapes());
  ok.probe.carrier = 2.1;
  CHECK_FALSE(ok.identical_shapes());
}

TEST_CASE("wave vector") {
  const auto p = pulse();
  CHECK(p.wave_vector().z() == doctest::Approx(2.0 / constants::speed_of_light_au));
}
