#include "loopresp/generator.hpp"

#include <stdexcept>

namespace loopresp {

HarmonicGenerator build_generator(const LevelSystem& system, const DriveConfig& drive,
                                  Mode mode) {
  if (system.gamma1 < 0 || system.gamma2 < 0 || system.gamma3 < 0) {
    throw std::invalid_argument("build_generator: negative decay rate");
  }
  if (mode == Mode::closed_loop && drive.r1 != 0.0) {
    throw std::invalid_argument("build_generator: closed_loop mode requires r1 = 0");
  }
  if (mode == Mode::incoherent && drive.omega31_mag != 0.0) {
    throw std::invalid_argument("build_generator: incoherent mode requires omega31 = 0");
  }

  const double g1 = system.gamma1;
  const double g2 = system.gamma2;
  const double g3 = system.gamma3;
  const double gs = system.gamma_sum();
  const double r1 = (mode == Mode::incoherent) ? drive.r1 : 0.0;
  const double d1 = (mode == Mode::incoherent) ? 0.0 : drive.delta1;
  const double d2 = drive.delta2;
  const double d3 = drive.delta3;
  const double delta = d2 + d3 - d1;

  const Complex O31 = (mode == Mode::incoherent) ? Complex{0.0} : drive.omega31();
  const Complex O13 = std::conj(O31);
  const Complex O32 = drive.omega32();
  const Complex O23 = std::conj(O32);

  HarmonicGenerator gen;
  gen.delta = delta;
  gen.omega21 = drive.omega21();
  gen.mode = mode;

  Mat8& m0 = gen.m0;
  Vec8& s0 = gen.sigma0;

  // rho11
  m0(kRho11, kRho11) = -(g1 + 2.0 * r1);
  m0(kRho11, kRho22) = g3 - (g1 + r1);
  m0(kRho11, kRho13) = -kI * O31;
  m0(kRho11, kRho31) = kI * O13;
  s0(kRho11) = g1 + r1;
  // rho12
  m0(kRho12, kRho12) = -(kI * (delta - d3) + 0.5 * (r1 + g3));
  m0(kRho12, kRho13) = -kI * O32;
  m0(kRho12, kRho32) = kI * O13;
  // rho13
  m0(kRho13, kRho13) = -(kI * (delta - d2 - d3) + r1 + 0.5 * (g1 + g2));
  m0(kRho13, kRho11) = -2.0 * kI * O13;
  m0(kRho13, kRho22) = -kI * O13;
  m0(kRho13, kRho12) = -kI * O23;
  s0(kRho13) = kI * O13;
  // rho21
  m0(kRho21, kRho21) = -(-kI * (delta - d3) + 0.5 * (r1 + g3));
  m0(kRho21, kRho31) = kI * O23;
  m0(kRho21, kRho23) = -kI * O31;
  // rho22
  m0(kRho22, kRho22) = -(g2 + g3);
  m0(kRho22, kRho11) = -g2;
  m0(kRho22, kRho23) = -kI * O32;
  m0(kRho22, kRho32) = kI * O23;
  s0(kRho22) = g2;
  // rho23
  m0(kRho23, kRho23) = kI * d2 - 0.5 * (r1 + gs);
  m0(kRho23, kRho21) = -kI * O13;
  m0(kRho23, kRho11) = -kI * O23;
  m0(kRho23, kRho22) = -2.0 * kI * O23;
  s0(kRho23) = kI * O23;
  // rho31
  m0(kRho31, kRho31) = -(-kI * (delta - d2 - d3) + r1 + 0.5 * (g1 + g2));
  m0(kRho31, kRho11) = 2.0 * kI * O31;
  m0(kRho31, kRho22) = kI * O31;
  m0(kRho31, kRho21) = kI * O32;
  s0(kRho31) = -kI * O31;
  // rho32
  m0(kRho32, kRho32) = -kI * d2 - 0.5 * (r1 + gs);
  m0(kRho32, kRho12) = kI * O31;
  m0(kRho32, kRho11) = kI * O32;
  m0(kRho32, kRho22) = 2.0 * kI * O32;
  s0(kRho32) = -kI * O32;

  // Magnetic-probe couplings, split by their e^{+-i delta t} factors.
  Mat8& mp = gen.m_plus;
  mp(kRho11, kRho12) = -kI;
  mp(kRho21, kRho11) = kI;
  mp(kRho21, kRho22) = -kI;
  mp(kRho22, kRho12) = kI;
  mp(kRho23, kRho13) = kI;
  mp(kRho31, kRho32) = -kI;

  Mat8& mm = gen.m_minus;
  mm(kRho11, kRho21) = kI;
  mm(kRho12, kRho11) = -kI;
  mm(kRho12, kRho22) = kI;
  mm(kRho13, kRho23) = kI;
  mm(kRho22, kRho21) = -kI;
  mm(kRho32, kRho31) = -kI;

  // The magnetic probe never multiplies rho33, so the elimination leaves the
  // oscillating sigma blocks empty.
  return gen;
}

Mat8 HarmonicGenerator::m_at(double t) const {
  const Complex up = omega21 * std::exp(kI * delta * t);
  const Complex dn = std::conj(omega21) * std::exp(-kI * delta * t);
  return m0 + m_plus * up + m_minus * dn;
}

Vec8 HarmonicGenerator::sigma_at(double t) const {
  const Complex up = omega21 * std::exp(kI * delta * t);
  const Complex dn = std::conj(omega21) * std::exp(-kI * delta * t);
  return sigma0 + sigma_plus * up + sigma_minus * dn;
}

DensityVector rhs(double t, const DensityVector& state, const HarmonicGenerator& gen) {
  DensityVector out;
  out.entries = gen.m_at(t) * state.entries + gen.sigma_at(t);
  return out;
}

}  // namespace loopresp
