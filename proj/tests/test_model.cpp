#include <doctest.h>

#include <random>

#include "loopresp/model.hpp"

using namespace loopresp;

TEST_CASE("default preset validates without issues") {
  const ValidationReport report =
      validate(LevelSystem{}, presets::closed_loop(), MediumParams{});
  CHECK(report.empty());
}

TEST_CASE("negative rate is a violation") {
  LevelSystem sys;
  sys.gamma1 = -1.0;
  const ValidationReport report = validate(sys, presets::closed_loop(), MediumParams{});
  CHECK(!report.ok());
  CHECK(report.to_string().find("negative rate") != std::string::npos);
}

TEST_CASE("strong probe warns but does not reject") {
  DriveConfig drive = presets::closed_loop();
  drive.omega32_mag = 0.5;
  const ValidationReport report = validate(LevelSystem{}, drive, MediumParams{});
  CHECK(report.ok());
  CHECK(!report.empty());
  CHECK(report.to_string().find("linear regime") != std::string::npos);
}

TEST_CASE("multiphoton detuning is derived exactly") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int k = 0; k < 100; ++k) {
    DriveConfig d;
    d.delta1 = u(rng);
    d.delta2 = u(rng);
    d.delta3 = u(rng);
    CHECK(d.multiphoton_detuning() == d.delta2 + d.delta3 - d.delta1);
  }
}

TEST_CASE("complex Rabi assembly carries the drive phases") {
  DriveConfig d;
  d.omega31_mag = 2.0;
  d.psi = 1.1;
  d.omega32_mag = 0.3;
  d.omega21_mag = 0.4;
  d.phi = -0.7;
  CHECK(std::arg(d.omega31()) == doctest::Approx(1.1).epsilon(1e-14));
  CHECK(std::arg(d.omega32()) == doctest::Approx(-0.7).epsilon(1e-14));
  CHECK(std::arg(d.omega21()) == doctest::Approx(-0.7).epsilon(1e-14));
  CHECK(std::abs(d.omega31()) == doctest::Approx(2.0));
}

TEST_CASE("density vector physicality checks") {
  DensityVector ground = DensityVector::ground();
  CHECK(ground.is_physical());
  CHECK(ground.rho33() == Complex{0.0});

  DensityVector broken = ground;
  broken.entries[kRho12] = Complex{0.1, 0.0};  // missing conjugate partner
  CHECK(broken.hermiticity_defect() == doctest::Approx(0.1));
  CHECK(!broken.is_physical());

  DensityVector mixed = DensityVector::from_populations(0.25, 0.5);
  mixed.entries[kRho13] = Complex{0.01, 0.02};
  mixed.entries[kRho31] = std::conj(mixed.entries[kRho13]);
  CHECK(mixed.is_physical());
  CHECK(mixed.rho33().real() == doctest::Approx(0.25));
}

TEST_CASE("medium defaults follow the natural-unit convention") {
  const MediumParams m;
  CHECK(m.d32 == 1.0);
  CHECK(m.mu21 == doctest::Approx(m.alpha).epsilon(1e-15));
  CHECK(m.alpha == doctest::Approx(1.0 / 137.035999).epsilon(1e-15));
}
