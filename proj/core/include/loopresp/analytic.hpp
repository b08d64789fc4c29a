#pragma once

#include <stdexcept>

#include "loopresp/floquet.hpp"
#include "loopresp/model.hpp"
#include "loopresp/types.hpp"

namespace loopresp {

class DegenerateDenominator : public std::runtime_error {
 public:
  explicit DegenerateDenominator(const char* which)
      : std::runtime_error(std::string("analytic evaluation: degenerate denominator ") + which) {}
};

// Closed-form expansion coefficients plus the abbreviations entering the
// formulas. Cross coefficients are reported for any detuning (the in-phase
// selection rule is NOT applied here); off the resonant branch they describe
// the amplitude oscillating against the probe frame.
struct AnalyticCoefficients {
  Complex d21{0.0};
  Complex c21{0.0};
  Complex d32{0.0};
  Complex c32{0.0};
  Branch branch = Branch::detuned;
  double b = 0.0;        // common denominator of the coefficient forms
  double gamma_s = 0.0;  // gamma1 + gamma2 + gamma3
  double big_gamma = 0.0;  // (gamma1 + gamma2)^2 gamma3
  Complex c_plus{0.0};   // probe-coherence denominators at resonance
  Complex c_minus{0.0};
  double d = 0.0;        // resonance-branch common denominator
};

// Arbitrary multiphoton detuning, closed-loop drive (r1 = 0).
AnalyticCoefficients general_coherences(const LevelSystem& system, const DriveConfig& drive);

// Multiphoton resonance; delta1 in `drive` is ignored and recomputed as
// delta2 + delta3.
AnalyticCoefficients resonant_coherences(const LevelSystem& system, const DriveConfig& drive);

// Incoherently pumped reference system; cross terms are identically zero.
AnalyticCoefficients incoherent_coherences(const LevelSystem& system, double r1, double delta2,
                                           double delta3);

struct Populations {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
};

// Closed-form steady populations of the incoherently pumped system.
Populations incoherent_populations(const LevelSystem& system, double r1);

// Strong-control-field population limits (Omega31 -> infinity).
Populations strong_drive_population_limits(const LevelSystem& system);

// Pump rate at which the direct magnetic coefficient vanishes at every
// detuning (the populations of |1> and |2> cross there).
double zero_absorption_pump_rate(const LevelSystem& system);

// Zeroth-order populations together with probe coherence coefficients
// reconstructed from them. Incoherent mode uses the closed population forms;
// closed-loop populations are obtained numerically from the harmonic solve
// with the probes off.
struct PopulationForms {
  Populations populations;
  Complex d21{0.0};
  Complex d32{0.0};
};
PopulationForms population_forms(const LevelSystem& system, const DriveConfig& drive, Mode mode);

}  // namespace loopresp
