#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "loopresp/generator.hpp"
#include "loopresp/model.hpp"
#include "loopresp/types.hpp"

namespace loopresp {

class StepFailure : public std::runtime_error {
 public:
  explicit StepFailure(double t)
      : std::runtime_error("time integration: step size underflow at t = " + std::to_string(t)) {}
};

class WindowTooShort : public std::runtime_error {
 public:
  WindowTooShort()
      : std::runtime_error("harmonic projection: window shorter than two beat periods") {}
};

// Adaptive RK45 trajectory plus a uniformly sampled projection window at the
// end of the run. With rho33 eliminated the complex trace re-sums to one
// identically, so trace preservation is tracked as the drift of the
// population imaginary parts together with the Hermiticity pairing defect.
struct IntegrationResult {
  std::vector<double> times;        // accepted-step subsample of the trajectory
  std::vector<Vec8> states;
  double transient_time = 0.0;      // suggested settling scale used for the window
  double window_begin = 0.0;
  double window_end = 0.0;
  std::vector<double> window_times;  // uniform grid over [window_begin, window_end]
  std::vector<Vec8> window_states;
  double max_population_imag = 0.0;
  double max_hermiticity_defect = 0.0;
};

// 10 / min(nonzero relaxation rates): a safe settling time before projecting.
double suggest_settling_time(const LevelSystem& system, const DriveConfig& drive);

// Integrates dR/dt = M(t) R + Sigma(t) from t = 0 to t_end with per-step
// relative tolerance tol. The projection window is the trailing stretch of
// the run, an integer number of beat periods long when delta != 0.
IntegrationResult integrate(const HarmonicGenerator& gen, const DensityVector& initial,
                            double t_end, double tol = 1e-10);

struct HarmonicProjection {
  Vec8 r0 = Vec8::Zero();       // (1/T) int R dt
  Vec8 r_plus = Vec8::Zero();   // (1/T) int R e^{-i delta t} dt  (content of the +delta line)
  Vec8 r_minus = Vec8::Zero();  // (1/T) int R e^{+i delta t} dt  (content of the -delta line)
};

// Windowed Fourier projection over uniform samples spanning an integer
// number of beat periods. For delta = 0 the projection degenerates to the
// final sample.
HarmonicProjection project_samples(const std::vector<double>& times,
                                   const std::vector<Vec8>& states, double delta);

// Projects the stored window of an integration. Throws WindowTooShort when
// delta != 0 and the window covers less than two beat periods.
HarmonicProjection project_harmonics(const IntegrationResult& result, double delta);

// Debug dump: t followed by Re/Im of the 8 components per row.
void write_trajectory_csv(std::ostream& out, const IntegrationResult& result);

}  // namespace loopresp
