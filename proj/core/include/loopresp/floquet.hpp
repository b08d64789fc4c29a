#pragma once

#include <stdexcept>

#include "loopresp/generator.hpp"
#include "loopresp/model.hpp"
#include "loopresp/types.hpp"

namespace loopresp {

// |Delta| at or below this counts as multiphoton resonance. The resonance
// condition is exact; the tolerance only absorbs floating-point detuning
// arithmetic.
inline constexpr double kResonanceTol = 1e-9;

// Condition-number ceiling for the three harmonic solves.
inline constexpr double kConditionLimit = 1e12;

// Internal probe amplitude used by coefficient extraction.
inline constexpr double kExtractionEps = 1e-6;

// Relative eps-halving agreement demanded by the linearity certificate.
inline constexpr double kLinearityTol = 1e-6;

class SingularGenerator : public std::runtime_error {
 public:
  explicit SingularGenerator(double cond)
      : std::runtime_error("harmonic solve: generator too ill-conditioned (cond ~ " +
                           std::to_string(cond) + ")"),
        condition(cond) {}
  double condition;
};

class LinearityFailure : public std::runtime_error {
 public:
  explicit LinearityFailure(double gap)
      : std::runtime_error("coefficient extraction: eps-halving certificate failed (rel gap " +
                           std::to_string(gap) + ")"),
        relative_gap(gap) {}
  double relative_gap;
};

// Harmonic amplitudes of the density-matrix vector:
//   R(t) = r0 + r_plus * Omega21 e^{+i delta t} + r_minus * Omega12 e^{-i delta t}
// r_plus/r_minus are stored as coefficient vectors (per unit Omega21/Omega12).
struct FloquetSolution {
  DensityVector r0;
  Vec8 r_plus = Vec8::Zero();
  Vec8 r_minus = Vec8::Zero();
  double residual = 0.0;  // max of the three relative back-substitution residuals
  double delta = 0.0;
  Complex omega21{0.0};
  Complex omega12{0.0};

  Vec8 at_time(double t) const {
    return r0.entries + r_plus * (omega21 * std::exp(kI * delta * t)) +
           r_minus * (omega12 * std::exp(-kI * delta * t));
  }
};

// Solves the three harmonic-balance linear systems
//   m0 r0 = -sigma0
//   (m0 - i delta) r_plus  = -(m_plus  r0 + sigma_plus)
//   (m0 + i delta) r_minus = -(m_minus r0 + sigma_minus)
// omega21/omega12 are carried along for synthesis; the coefficient vectors do
// not depend on them. Throws SingularGenerator past the condition ceiling.
FloquetSolution solve_harmonics(const HarmonicGenerator& gen, Complex omega21,
                                Complex omega12);

enum class Branch { resonant, detuned };

// Linear-response expansion coefficients of the two probe coherences:
//   d21: rho21 per unit Omega21 (direct magnetic)
//   d32: rho32 per unit Omega32 (direct electric)
//   c21: rho21 per unit Omega23 (cross magnetic; zeroed on the detuned branch)
//   c32: rho32 per unit Omega12 (cross electric; zeroed on the detuned branch)
struct ExpansionCoefficients {
  Complex d21{0.0};
  Complex c21{0.0};
  Complex d32{0.0};
  Complex c32{0.0};
  Branch branch = Branch::detuned;
  double linearity_gap = 0.0;  // worst relative eps-pair disagreement observed
};

// Same payload before the in-phase selection rule is applied: the cross
// coefficients are reported for any detuning.
struct RawCoefficients {
  Complex d21{0.0};
  Complex d32{0.0};
  Complex c21{0.0};
  Complex c32{0.0};
  double linearity_gap = 0.0;
};

// Probe magnitudes in `drive` are ignored; extraction evaluates the direct
// magnetic and cross electric coefficients exactly at Omega32 = 0 and obtains
// the Omega32-direction derivatives by two-point differencing at eps and
// eps/2 (Richardson-combined), guarded by the linearity certificate.
RawCoefficients extract_raw_coefficients(const LevelSystem& system, const DriveConfig& drive,
                                         Mode mode, double eps = kExtractionEps);

// Raw coefficients filtered by the in-phase selection rule: cross terms
// survive only at multiphoton resonance.
ExpansionCoefficients extract_coefficients(const LevelSystem& system, const DriveConfig& drive,
                                           Mode mode);

// 1-norm condition estimate used by the harmonic solves.
double condition_estimate(const Mat8& a);

}  // namespace loopresp
