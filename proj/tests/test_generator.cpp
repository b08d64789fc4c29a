#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "loopresp/generator.hpp"

using namespace loopresp;

namespace {

// Termwise transcription of the transformed equations of motion, evaluated
// directly at time t: the oracle the harmonic blocks are checked against.
// Written against the rho33-eliminated 8-vector with rho33 = 1 - r11 - r22.
Vec8 eom_direct(double t, const Vec8& v, const LevelSystem& sys, double r1, double d1,
                double d2, double d3, Complex o31, Complex o32, Complex o21) {
  const double g1 = sys.gamma1, g2 = sys.gamma2, g3 = sys.gamma3;
  const double gs = g1 + g2 + g3;
  const double delta = d2 + d3 - d1;
  const Complex o13 = std::conj(o31);
  const Complex o23 = std::conj(o32);
  const Complex o12 = std::conj(o21);
  const Complex up = std::exp(kI * delta * t);    // pairs with o21
  const Complex dn = std::exp(-kI * delta * t);   // pairs with o12

  const Complex r11 = v[0], r12 = v[1], r13 = v[2], r21 = v[3], r22 = v[4], r23 = v[5],
                r31 = v[6], r32 = v[7];
  const Complex r33 = 1.0 - r11 - r22;

  Vec8 d;
  d[0] = -r1 * r11 + g3 * r22 + (g1 + r1) * r33 + kI * dn * o12 * r21 - kI * up * o21 * r12 +
         kI * o13 * r31 - kI * o31 * r13;
  d[1] = -(kI * (delta - d3) + 0.5 * (r1 + g3)) * r12 - kI * o32 * r13 -
         kI * dn * o12 * (r11 - r22) + kI * o13 * r32;
  d[2] = -(kI * (delta - d2 - d3) + 0.5 * (2.0 * r1 + g1 + g2)) * r13 -
         kI * o13 * (r11 - r33) - kI * o23 * r12 + kI * dn * o12 * r23;
  d[3] = -(-kI * (delta - d3) + 0.5 * (r1 + g3)) * r21 + kI * o23 * r31 +
         kI * up * o21 * (r11 - r22) - kI * o31 * r23;
  d[4] = -g3 * r22 + g2 * r33 - kI * dn * o12 * r21 + kI * up * o21 * r12 - kI * o32 * r23 +
         kI * o23 * r32;
  d[5] = -(-kI * d2 + 0.5 * (r1 + g1 + g2 + g3)) * r23 - kI * o13 * r21 + kI * up * o21 * r13 +
         kI * o23 * (r33 - r22);
  d[6] = -(-kI * (delta - d2 - d3) + 0.5 * (2.0 * r1 + g1 + g2)) * r31 +
         kI * o31 * (r11 - r33) + kI * o32 * r21 - kI * up * o21 * r32;
  d[7] = -(kI * d2 + 0.5 * (r1 + gs)) * r32 + kI * o31 * r12 - kI * dn * o12 * r31 -
         kI * o32 * (r33 - r22);
  return d;
}

}  // namespace

TEST_CASE("harmonic blocks reproduce the directly coded equations of motion") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);

  for (int trial = 0; trial < 20; ++trial) {
    LevelSystem sys;
    sys.gamma1 = std::abs(u(rng));
    sys.gamma2 = std::abs(u(rng)) + 0.1;
    sys.gamma3 = std::abs(u(rng)) * 0.1;
    const Mode mode = (trial % 2 == 0) ? Mode::closed_loop : Mode::incoherent;

    DriveConfig drive;
    drive.omega31_mag = (mode == Mode::closed_loop) ? std::abs(u(rng)) : 0.0;
    drive.psi = ang(rng);
    drive.omega32_mag = 0.5 * std::abs(u(rng));
    drive.omega21_mag = 0.5 * std::abs(u(rng));
    drive.phi = ang(rng);
    drive.delta1 = (mode == Mode::closed_loop) ? u(rng) : 0.0;
    drive.delta2 = u(rng);
    drive.delta3 = u(rng);
    drive.r1 = (mode == Mode::incoherent) ? std::abs(u(rng)) : 0.0;

    const HarmonicGenerator gen = build_generator(sys, drive, mode);

    // Arbitrary complex vectors, not just physical states.
    DensityVector state;
    for (int i = 0; i < 8; ++i) state.entries[i] = Complex{u(rng), u(rng)};
    const double t = 5.0 * u(rng);

    const Vec8 from_blocks = rhs(t, state, gen).entries;
    const Vec8 direct = eom_direct(t, state.entries, sys, drive.r1,
                                   (mode == Mode::incoherent) ? 0.0 : drive.delta1,
                                   drive.delta2, drive.delta3,
                                   (mode == Mode::incoherent) ? Complex{0.0} : drive.omega31(),
                                   drive.omega32(), drive.omega21());
    CHECK((from_blocks - direct).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("magnetic-probe blocks have the exact coupling pattern") {
  const HarmonicGenerator gen =
      build_generator(LevelSystem{}, presets::closed_loop(), Mode::closed_loop);

  const std::vector<std::tuple<int, int, Complex>> plus_entries = {
      {kRho11, kRho12, -kI}, {kRho21, kRho11, kI}, {kRho21, kRho22, -kI},
      {kRho22, kRho12, kI},  {kRho23, kRho13, kI}, {kRho31, kRho32, -kI}};
  const std::vector<std::tuple<int, int, Complex>> minus_entries = {
      {kRho11, kRho21, kI}, {kRho12, kRho11, -kI}, {kRho12, kRho22, kI},
      {kRho13, kRho23, kI}, {kRho22, kRho21, -kI}, {kRho32, kRho31, -kI}};

  int nz_plus = 0, nz_minus = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (gen.m_plus(i, j) != Complex{0.0}) ++nz_plus;
      if (gen.m_minus(i, j) != Complex{0.0}) ++nz_minus;
    }
  }
  CHECK(nz_plus == 6);
  CHECK(nz_minus == 6);
  for (const auto& [i, j, val] : plus_entries) CHECK(gen.m_plus(i, j) == val);
  for (const auto& [i, j, val] : minus_entries) CHECK(gen.m_minus(i, j) == val);
  CHECK(gen.sigma_plus.isZero(0.0));
  CHECK(gen.sigma_minus.isZero(0.0));
}

TEST_CASE("decay-only generator structure") {
  LevelSystem sys;
  sys.gamma3 = 0.1;
  DriveConfig off;
  off.omega31_mag = off.omega32_mag = off.omega21_mag = 0.0;
  const HarmonicGenerator gen = build_generator(sys, off, Mode::closed_loop);

  // sigma0 carries the decay feeding from the eliminated rho33.
  CHECK(gen.sigma0[kRho11] == Complex{sys.gamma1});
  CHECK(gen.sigma0[kRho22] == Complex{sys.gamma2});
  for (int i : {kRho12, kRho13, kRho21, kRho23, kRho31, kRho32}) {
    CHECK(gen.sigma0[i] == Complex{0.0});
  }

  // m0 itself is invertible and stable; the trace-restored affine lift
  // [[m0, sigma0], [0, 0]] carries eigenvalue zero exactly once (the unique
  // steady manifold).
  Eigen::Matrix<Complex, 9, 9> lift = Eigen::Matrix<Complex, 9, 9>::Zero();
  lift.topLeftCorner<8, 8>() = gen.m0;
  lift.topRightCorner<8, 1>() = gen.sigma0;
  const Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 9, 9>> es(lift);
  int zero_count = 0;
  for (int i = 0; i < 9; ++i) {
    if (std::abs(es.eigenvalues()[i]) < 1e-12) ++zero_count;
    CHECK(es.eigenvalues()[i].real() < 1e-12);
  }
  CHECK(zero_count == 1);
  CHECK(std::abs(Eigen::PartialPivLU<Mat8>(gen.m0).determinant()) > 1e-12);
}

TEST_CASE("incoherent population row carries the pump bookkeeping") {
  LevelSystem sys;
  DriveConfig drive = presets::incoherent_pump();  // r1 = 1
  const HarmonicGenerator gen = build_generator(sys, drive, Mode::incoherent);
  const double r1 = drive.r1;
  // -r1 on rho11 plus -(gamma1 + r1) from the eliminated rho33 channel.
  CHECK(gen.m0(kRho11, kRho11) == Complex{-(r1 + sys.gamma1 + r1)});
  CHECK(gen.sigma0[kRho11] == Complex{sys.gamma1 + r1});
  CHECK(gen.m0(kRho11, kRho22) == Complex{sys.gamma3 - (sys.gamma1 + r1)});
}

TEST_CASE("mode constraints are rejected") {
  DriveConfig bad_loop = presets::closed_loop();
  bad_loop.r1 = 0.5;
  CHECK_THROWS_AS(build_generator(LevelSystem{}, bad_loop, Mode::closed_loop),
                  std::invalid_argument);

  DriveConfig bad_pump = presets::incoherent_pump();
  bad_pump.omega31_mag = 1.0;
  CHECK_THROWS_AS(build_generator(LevelSystem{}, bad_pump, Mode::incoherent),
                  std::invalid_argument);
}

TEST_CASE("mode reduction: undriven closed loop equals unpumped incoherent") {
  DriveConfig d;
  d.omega31_mag = 0.0;
  d.r1 = 0.0;
  d.delta1 = 0.0;
  d.delta3 = 0.0;
  d.delta2 = 1.3;
  const HarmonicGenerator a = build_generator(LevelSystem{}, d, Mode::closed_loop);
  const HarmonicGenerator b = build_generator(LevelSystem{}, d, Mode::incoherent);
  CHECK((a.m0 - b.m0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.sigma0 - b.sigma0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.m_plus - b.m_plus).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("undriven ground state is stationary") {
  DriveConfig off;
  off.omega31_mag = off.omega32_mag = off.omega21_mag = 0.0;
  const HarmonicGenerator gen = build_generator(LevelSystem{}, off, Mode::closed_loop);
  CHECK(rhs(3.21, DensityVector::ground(), gen).entries.norm() < 1e-15);
}

TEST_CASE("rhs is time independent at multiphoton resonance") {
  DriveConfig d = presets::closed_loop();
  d.delta1 = 0.6;
  d.delta2 = 0.35;
  d.delta3 = 0.25;  // Delta = 0
  const HarmonicGenerator gen = build_generator(LevelSystem{}, d, Mode::closed_loop);
  DensityVector state = DensityVector::from_populations(0.4, 0.3);
  state.entries[kRho23] = Complex{0.02, 0.05};
  state.entries[kRho32] = std::conj(state.entries[kRho23]);
  CHECK((rhs(0.0, state, gen).entries - rhs(17.3, state, gen).entries).norm() < 1e-14);
}

TEST_CASE("rhs preserves the Hermiticity pairing and the trace") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LevelSystem sys;
  DriveConfig d = presets::closed_loop();
  d.omega32_mag = 0.2;
  d.omega21_mag = 0.3;
  d.delta1 = 0.4;
  d.delta2 = -0.8;
  d.delta3 = 1.2;
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);

  for (int trial = 0; trial < 10; ++trial) {
    DensityVector state = DensityVector::from_populations(0.3, 0.45);
    for (auto [a, b] : {std::pair{kRho12, kRho21}, {kRho13, kRho31}, {kRho23, kRho32}}) {
      const Complex z{0.1 * u(rng), 0.1 * u(rng)};
      state.entries[a] = z;
      state.entries[b] = std::conj(z);
    }
    const double t = 3.0 * u(rng);
    const DensityVector deriv = rhs(t, state, gen);
    CHECK(deriv.hermiticity_defect() < 1e-13);

    // Population derivatives cancel against the independently coded rho33
    // equation.
    const Complex rho33 = state.rho33();
    const Complex drho33 = -(sys.gamma1 + sys.gamma2) * rho33 +
                           kI * d.omega31() * state.entries[kRho13] -
                           kI * std::conj(d.omega31()) * state.entries[kRho31] +
                           kI * d.omega32() * state.entries[kRho23] -
                           kI * std::conj(d.omega32()) * state.entries[kRho32];
    CHECK(std::abs(deriv.entries[kRho11] + deriv.entries[kRho22] + drho33) < 1e-12);
  }
}
