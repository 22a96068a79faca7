#include "srs/constants.hpp"
#include "srs/errors.hpp"
#include "srs/rayleigh.hpp"

#include <doctest.h>

#include <cmath>

using namespace srs;
using constants::pi;

namespace {

// J(t0, gamma) frozen from the erfcx closed form of the resonant overlap,
// I = (pi / 2b) exp(-t^2/4) [erfcx(b - t/2) + erfcx(b + t/2)], b = gamma/2,
// differentiated numerically in extended precision.
struct JPoint {
  double t0, gamma, J;
};
constexpr JPoint kJ[] = {
    {1.0, 10.0, 0.02878866499616411},    {0.5, 10.0, 0.020662221712243467},
    {2.0, 10.0, 0.013572586352451723},   {1.0, 30.0, 0.0011217057501960548},
    {1.0, 100.0, 3.0469278016000987e-05}, {1.0, 1.0, 4.891771173198833},
    {1.0, 0.5, 9.511640782378095},        {0.5, 3.0, 0.4710705360122524},
    {2.0, 3.0, 0.44697424902775945},      {3.0, 10.0, 0.0018368779211512638},
};

} // namespace

TEST_CASE("J matches the closed-form reference") {
  for (const auto& p : kJ) {
    const auto j = J_resonant(p.t0, p.gamma);
    CHECK(j.converged);
    CHECK(j.value == doctest::Approx(p.J).epsilon(1e-8));
  }
}

TEST_CASE("J is odd in the delay and peaks near t0 = 1 at gamma = 10") {
  CHECK(std::abs(J_resonant(0.0, 10.0).value) < 1e-15);
  for (double t : {0.3, 1.0, 2.5}) CHECK(J_resonant(-t, 10.0).value == doctest::Approx(-J_resonant(t, 10.0).value));
  CHECK(J_resonant(1.0186, 10.0).value > J_resonant(0.95, 10.0).value);
  CHECK(J_resonant(1.0186, 10.0).value > J_resonant(1.09, 10.0).value);
  CHECK(J_resonant(1.0186, 10.0).value == doctest::Approx(0.028798).epsilon(1e-5));
}

TEST_CASE("large-gamma asymptote is approached monotonically") {
  double prev = INFINITY;
  for (double g : {10.0, 30.0, 100.0}) {
    const double err = std::abs(g * g * g * J_resonant(1.0, g).value / (16 * pi) - std::exp(-0.5));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev == doctest::Approx(0.000364).epsilon(0.01));
  const ResonantParams p{1.0, 100.0, 0.1, 0.2};
  CHECK(w_T_asymptotic(p) == doctest::Approx(w_T_resonant(p).value).epsilon(0.02));
}

TEST_CASE("w_T is quartic in the Rabi products") {
  const ResonantParams a{1.0, 10.0, 0.01, 0.01};
  const ResonantParams b{1.0, 10.0, 0.02, 0.01};
  const ResonantParams c{1.0, 10.0, 0.02, 0.02};
  CHECK(w_T_resonant(b).value == doctest::Approx(4 * w_T_resonant(a).value).epsilon(1e-12));
  CHECK(w_T_resonant(c).value == doctest::Approx(16 * w_T_resonant(a).value).epsilon(1e-12));
  CHECK(w_T_resonant(a).value == doctest::Approx(1e-8 * kJ[0].J).epsilon(1e-8));
}

TEST_CASE("spectral route reproduces the closed form") {
  for (const auto& p : kJ) {
    const ResonantParams rp{p.t0, p.gamma, 0.1, 0.1};
    const auto s = resonant_setup(rp, 100.0, 0.5);
    const auto w = net_probability(s.pair, s.model, Route::frequency);
    CHECK(w.converged);
    CHECK(w.value == doctest::Approx(1e-4 * p.J).epsilon(1e-7));
  }
}

TEST_CASE("time-domain and spectral amplitudes agree for one level") {
  const double tau = 100.0, w0 = 0.5;
  const DiscreteLevels level{{{w0, 1.0}}, 0.05};
  for (double t0 : {-1.0, 0.0, 1.5}) {
    const PulsePair pair{{2e-3, w0, tau, 0.0, Eigen::Vector3d::UnitZ()},
                         {2e-3, w0, tau, t0 * tau, Eigen::Vector3d::UnitZ()}};
    const auto f = amplitudes_frequency_domain(pair, level);
    const auto t = amplitudes_time_domain(pair, level);
    CHECK(t.converged);
    CHECK(std::abs(t.emission) == doctest::Approx(std::abs(f.emission)).epsilon(1e-3));
    CHECK(std::abs(t.absorption) == doctest::Approx(std::abs(f.absorption)).epsilon(1e-3));
  }
}

TEST_CASE("zero delay gives no net gain on every route") {
  const auto s = resonant_setup({0.0, 10.0, 0.1, 0.1}, 100.0, 0.5);
  CHECK(std::abs(net_probability(s.pair, s.model, Route::frequency).value) < 1e-18);
  const DiscreteLevels level{{{0.5, 1.0}}, 0.05};
  CHECK(std::abs(net_probability(s.pair, level, Route::time).value) < 1e-12);
  const PulsePair pair = s.pair;
  CHECK(std::abs(w_T_continuum(pair, {0.4, DeltaBranch::physical})) < 1e-30);
}

TEST_CASE("continuum linear response matches full quadrature at E_b tau = 100") {
  const double tau = 100.0, eb = 1.0, x = 1.5;
  const DeltaPotential model{eb, DeltaBranch::physical};
  for (double t0 : {0.5, 1.0, 2.0}) {
    const PulsePair pair{{1e-3, x * eb, tau, 0.0, Eigen::Vector3d::UnitZ()},
                         {1e-3, x * eb, tau, t0 * tau, Eigen::Vector3d::UnitZ()}};
    CHECK(continuum_expansion_valid(pair, model));
    const double lin = w_T_continuum(pair, model);
    const double full = net_probability(pair, model, Route::frequency).value;
    CHECK(std::abs(lin - full) < 2e-4 * std::abs(full));
    CHECK(lin > 0.0);
  }
}

TEST_CASE("continuum closed form composes alpha and its slope") {
  const double tau = 50.0, w0 = 0.6;
  const DeltaPotential model{0.5, DeltaBranch::physical};
  const double e0 = 2e-3, e1 = 3e-3, dt = 40.0;
  const PulsePair pair{{e0, w0, tau, 0.0, Eigen::Vector3d::UnitZ()}, {e1, w0, tau, dt, Eigen::Vector3d::UnitZ()}};
  const auto a = alpha(model, w0);
  const auto ap = alpha_prime(model, w0);
  const double expect = pi * e0 * e0 * e1 * e1 / 8 * dt * std::exp(-dt * dt / (2 * tau * tau)) *
                        (a.real() * ap.imag() - a.imag() * ap.real());
  CHECK(w_T_continuum(pair, model) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("route and model mismatches") {
  const auto s = resonant_setup({1.0, 10.0, 0.1, 0.1}, 100.0, 0.5);
  CHECK_THROWS_AS(net_probability(s.pair, s.model, Route::time), DomainError);
  CHECK_THROWS_AS(amplitudes_frequency_domain(s.pair, DeltaPotential{0.49, DeltaBranch::physical}),
                  DomainError);
  PulsePair unequal = s.pair;
  unequal.probe.duration = 90.0;
  CHECK_THROWS_AS(w_T_continuum(unequal, {0.3, DeltaBranch::physical}), DomainError);
  CHECK_THROWS_AS(J_resonant(1.0, 0.0), DomainError);
}
