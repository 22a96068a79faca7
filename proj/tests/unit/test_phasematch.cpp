#include "srs/constants.hpp"
#include "srs/errors.hpp"
#include "srs/phasematch.hpp"
#include "srs/units.hpp"

#include <doctest.h>

#include <cmath>

using namespace srs;
using constants::pi;

namespace {

EnsembleGeometry focal_geometry(double density_cm3 = 1e16) {
  EnsembleGeometry g;
  g.waist = to_atomic({1e-3, Dimension::length}, LabUnit::centimeter);
  g.length = to_atomic({1e-2, Dimension::length}, LabUnit::centimeter);
  g.density = to_atomic({density_cm3, Dimension::density}, LabUnit::per_cm3);
  return g;
}

double micron_k() {
  return carrier_from_wavelength(to_atomic({1e-4, Dimension::length}, LabUnit::centimeter)) /
         constants::speed_of_light_au;
}

} // namespace

TEST_CASE("forward phase matching is exactly N^2") {
  EnsembleGeometry g{100.0, 1000.0, 0.0, Eigen::Vector3d::UnitZ()};
  g.density = 1000.0 / g.volume();
  const auto atoms = sample_positions(g, 0, RngStream(1, 0));
  REQUIRE(atoms.sampled() == 1000);
  CHECK_FALSE(atoms.subsampled());
  CHECK(F_factor(atoms, Eigen::Vector3d::Zero()) == 1e6);
}

TEST_CASE("two atoms half a wavelength apart cancel") {
  AtomPositions atoms;
  atoms.positions.resize(3, 2);
  atoms.positions.col(0) = Eigen::Vector3d(0.3, -1.0, 2.0);
  atoms.positions.col(1) = atoms.positions.col(0) + Eigen::Vector3d(0.0, 0.0, 1.0);
  atoms.represented = 2;
  CHECK(F_factor(atoms, Eigen::Vector3d(0.0, 0.0, pi)) < 1e-12);
}

TEST_CASE("F is translation invariant and bounded") {
  EnsembleGeometry g{50.0, 400.0, 0.0, Eigen::Vector3d::UnitX()};
  g.density = 500.0 / g.volume();
  auto atoms = sample_positions(g, 0, RngStream(4, 0));
  const Eigen::Vector3d dk(0.01, 0.02, -0.005);
  const double f = F_factor(atoms, dk);
  CHECK(f >= 0.0);
  CHECK(f <= 500.0 * 500.0);
  atoms.positions.colwise() += Eigen::Vector3d(1e3, -7e2, 3.3e2);
  CHECK(F_factor(atoms, dk) == doctest::Approx(f).epsilon(1e-10));
}

TEST_CASE("random positions in a large cube add incoherently") {
  const double dk = 1.0;
  const double side = 100 * 2 * pi / dk;
  RngStream rng(9, 0);
  AtomPositions atoms;
  atoms.positions.resize(3, 10000);
  for (Eigen::Index j = 0; j < 10000; ++j) {
    atoms.positions.col(j) = Eigen::Vector3d(rng.uniform(), rng.uniform(), rng.uniform()) * side;
  }
  atoms.represented = 10000;
  const double ratio = F_factor(atoms, Eigen::Vector3d(0.0, 0.0, dk)) / 10000.0;
  CHECK(ratio > 0.01);
  CHECK(ratio < 100.0);
}

TEST_CASE("subsample bookkeeping") {
  const auto g = focal_geometry();
  const auto atoms = sample_positions(g, 10000, RngStream(1, 0));
  CHECK(atoms.subsampled());
  CHECK(atoms.represented == doctest::Approx(1e8).epsilon(1e-6));
  CHECK(atoms.coherent_scale() == doctest::Approx(1e8 * (1e8 - 1) / (1e4 * (1e4 - 1))));
  CHECK(atoms.incoherent_scale() == doctest::Approx(1e4));
  CHECK(F_factor(atoms, Eigen::Vector3d::Zero()) == doctest::Approx(1e16).epsilon(1e-12));
  CHECK_THROWS_AS(sample_positions(g, 0, RngStream(1, 0)), DomainError);
  CHECK_THROWS_AS(sample_positions(g, 1, RngStream(1, 0)), DomainError);
}

TEST_CASE("positions fill the cylinder and are reproducible") {
  EnsembleGeometry g{10.0, 40.0, 0.0, Eigen::Vector3d(0, 1, 0)};
  g.density = 2000.0 / g.volume();
  const auto a = sample_positions(g, 0, RngStream(2, 5));
  const auto b = sample_positions(g, 0, RngStream(2, 5));
  CHECK(a.positions == b.positions);
  CHECK(a.seed == 2);
  CHECK(a.stream_id == 5);
  for (Eigen::Index j = 0; j < a.sampled(); ++j) {
    const Eigen::Vector3d r = a.positions.col(j);
    REQUIRE(std::abs(r.y()) <= 20.0);
    REQUIRE(std::hypot(r.x(), r.z()) <= 5.0);
  }
}

TEST_CASE("a single atom radiates into 4 pi") {
  AtomPositions one;
  one.positions = Eigen::Matrix3Xd::Zero(3, 1);
  one.represented = 1;
  const auto est = F_sp(one, Eigen::Vector3d::UnitZ(), 0.05, 100.0, 500, RngStream(1, 1));
  CHECK(est.value == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(est.standard_error < 1e-9);
  CHECK_THROWS_AS(F_sp(one, Eigen::Vector3d::UnitZ(), 0.05, 100.0, 99, RngStream(1, 1)), DomainError);
}

TEST_CASE("collective solid-angle factor on the focal geometry") {
  const auto g = focal_geometry();
  const double n = g.atom_count();
  const double r = g.waist / g.length;
  const auto est = F_sp(g, micron_k(), 10000, 2000, RngStream(1, 0));
  const double ratio = est.value / (r * r * n * n);
  CHECK(ratio > 0.1);
  CHECK(ratio < 10.0);
  CHECK(est.standard_error < 0.2 * est.value);
}

TEST_CASE("subsampled F_sp is consistent with the full ensemble") {
  // Scaled geometry holding 1000 atoms.
  const double k = 1.0;
  EnsembleGeometry g{20.0, 200.0, 0.0, Eigen::Vector3d::UnitZ()};
  g.density = 1000.0 / g.volume();
  const auto full = F_sp(g, k, 0, 4000, RngStream(3, 0));
  const auto sub = F_sp(g, k, 300, 4000, RngStream(3, 1));
  CHECK(sub.coherent_scale > 1.0);
  CHECK(full.coherent_scale == 1.0);
  const double se = std::hypot(full.standard_error, sub.standard_error);
  CHECK(std::abs(full.value - sub.value) < 3 * se);
}

TEST_CASE("effective width") {
  const auto g = focal_geometry();
  const double gr = to_atomic({1e8, Dimension::frequency}, LabUnit::per_second);
  const auto w = effective_width(g, micron_k(), gr, 10000, 2000, RngStream(1, 0));
  CHECK(from_atomic(w.shortcut, LabUnit::per_second).value == doctest::Approx(1e14).epsilon(1e-6));
  CHECK(w.width / w.shortcut > 0.1);
  CHECK(w.width / w.shortcut < 10.0);
  CHECK(effective_width_shortcut(focal_geometry(2e16), gr) == doctest::Approx(2 * w.shortcut));

  // One atom: no collective enhancement, Gamma = 4 pi Gamma_r.
  EnsembleGeometry one{10.0, 10.0, 1.0 / 1000.0, Eigen::Vector3d::UnitZ()};
  const auto w1 = effective_width(one, 0.1, gr, 0, 200, RngStream(1, 0));
  CHECK(w1.width == doctest::Approx(4 * pi * gr).epsilon(1e-12));
}

TEST_CASE("gain is linear in w_T and F/N_a") {
  const auto g = focal_geometry();
  const GaussianPulse probe{4.8e-6, 0.0456, 4134.0, 4134.0, Eigen::Vector3d::UnitZ()};
  CHECK(gain(0.0, g, probe, 1e8) == 0.0);
  const double g1 = gain(1e-10, g, probe, 1e8);
  CHECK(g1 == doctest::Approx(8 * pi * 0.0456 * g.density * 1e8 * 1e-10 / (4.8e-6 * 4.8e-6)));
  CHECK(gain(1e-10, g, probe, 2e8) == doctest::Approx(2 * g1));
  CHECK(gain(-1e-10, g, probe, 1e8) == doctest::Approx(-g1));
  GaussianPulse dark = probe;
  dark.amplitude = 0.0;
  CHECK_THROWS_AS(gain(1e-10, g, dark, 1e8), DomainError);
}

TEST_CASE("coherence diagnostic and beam mismatch") {
  const auto g = focal_geometry();
  CHECK(coherence_parameter(g, Eigen::Vector3d::Zero()) == 0.0);
  const Eigen::Vector3d dk(0.0, 0.0, 1e-6);
  CHECK(coherence_parameter(g, dk) == doctest::Approx(1e-6 * g.length));
  PulsePair pair;
  pair.pump = {1e-3, 0.05, 100.0, 0.0, Eigen::Vector3d::UnitZ()};
  pair.probe = pair.pump;
  CHECK(wave_vector_mismatch(pair).norm() == 0.0);
}
