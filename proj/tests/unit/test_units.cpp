#include "srs/constants.hpp"
#include "srs/errors.hpp"
#include "srs/units.hpp"

#include <doctest.h>

#include <cmath>

using namespace srs;

TEST_CASE("lab units convert to atomic units") {
  CHECK(to_atomic({100.0, Dimension::time}, LabUnit::femtosecond) == doctest::Approx(4134.1373).epsilon(1e-7));
  CHECK(to_atomic({1.0, Dimension::length}, LabUnit::centimeter) == doctest::Approx(1.8897261e8).epsilon(1e-7));
  CHECK(to_atomic({1e16, Dimension::density}, LabUnit::per_cm3) == doctest::Approx(1.4818471e-9).epsilon(1e-6));
  CHECK(to_atomic({1e14, Dimension::frequency}, LabUnit::per_second) ==
        doctest::Approx(2.4188843e-3).epsilon(1e-7));
  CHECK(to_atomic({27.211386245988, Dimension::energy}, LabUnit::electronvolt) == doctest::Approx(1.0));
  CHECK(to_atomic({5.14220674763e9, Dimension::field}, LabUnit::volt_per_cm) == doctest::Approx(1.0));
}

TEST_CASE("carrier from a 1 micron wavelength") {
  const double lambda = to_atomic({1e-4, Dimension::length}, LabUnit::centimeter);
  CHECK(carrier_from_wavelength(lambda) == doctest::Approx(0.0455634).epsilon(1e-6));
}

TEST_CASE("every unit round-trips") {
  for (const auto& u : unit_table()) {
    const double au = to_atomic({3.7, u.dimension}, u.unit);
    CHECK(from_atomic(au, u.unit).value == doctest::Approx(3.7).epsilon(1e-14));
    CHECK(from_atomic(au, u.unit).dimension == u.dimension);
  }
}

TEST_CASE("unit lookup") {
  CHECK(parse_unit("fs", Dimension::time) == LabUnit::femtosecond);
  CHECK(parse_unit("au", Dimension::time) == LabUnit::au_time);
  CHECK(parse_unit("au", Dimension::energy) == LabUnit::hartree);
  CHECK(parse_unit("cm-3", Dimension::density) == LabUnit::per_cm3);
  CHECK_THROWS_AS(parse_unit("furlong", Dimension::length), ConfigError);
  CHECK_THROWS_AS(parse_unit("fs", Dimension::length), ConfigError);
}

TEST_CASE("conversion rejects mismatched or non-finite input") {
  CHECK_THROWS_AS(to_atomic({1.0, Dimension::length}, LabUnit::femtosecond), ConfigError);
  CHECK_THROWS_AS(to_atomic({NAN, Dimension::time}, LabUnit::femtosecond), ConfigError);
  CHECK_THROWS_AS(to_atomic({INFINITY, Dimension::time}, LabUnit::femtosecond), ConfigError);
}
