#pragma once

#include "loopresp/model.hpp"
#include "loopresp/types.hpp"

namespace loopresp {

enum class Mode { closed_loop, incoherent };

// Time-dependent generator of the transformed equations of motion, split into
// harmonic blocks:
//   M(t)     = m0 + m_plus * Omega21 e^{+i delta t} + m_minus * Omega12 e^{-i delta t}
//   Sigma(t) = sigma0 + sigma_plus * Omega21 e^{+i delta t} + sigma_minus * Omega12 e^{-i delta t}
// rho33 is eliminated at build time; the inhomogeneous sigma terms are what
// the elimination leaves behind. m_plus/m_minus hold only the couplings
// generated by the magnetic probe; everything else (decays, detunings,
// control field, electric probe, pump) lives in m0.
struct HarmonicGenerator {
  Mat8 m0 = Mat8::Zero();
  Mat8 m_plus = Mat8::Zero();
  Mat8 m_minus = Mat8::Zero();
  Vec8 sigma0 = Vec8::Zero();
  Vec8 sigma_plus = Vec8::Zero();
  Vec8 sigma_minus = Vec8::Zero();
  double delta = 0.0;     // multiphoton detuning
  Complex omega21{0.0};   // magnetic probe amplitude, |Omega21| e^{i phi}
  Mode mode = Mode::closed_loop;

  Mat8 m_at(double t) const;
  Vec8 sigma_at(double t) const;
};

// Assembles the generator blocks. closed_loop rejects r1 != 0; incoherent
// rejects a nonzero control field and forces delta1 = 0 (the control frame is
// meaningless without a control field). Conjugate Rabi frequencies are formed
// internally; callers never pass them.
HarmonicGenerator build_generator(const LevelSystem& system, const DriveConfig& drive,
                                  Mode mode);

// M(t) * state + Sigma(t).
DensityVector rhs(double t, const DensityVector& state, const HarmonicGenerator& gen);

}  // namespace loopresp
