#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "loopresp/types.hpp"

namespace loopresp {

// Spontaneous decay rates in units of gamma: gamma1 (|3>->|1>),
// gamma2 (|3>->|2>), gamma3 (|2>->|1>). The magnetic-dipole channel |2>->|1>
// is slower by the square of the fine-structure constant.
struct LevelSystem {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma3 = kFineStructure * kFineStructure;

  double gamma_sum() const { return gamma1 + gamma2 + gamma3; }
};

// Drive parameters: control Rabi |Omega31| with phase psi, probe Rabi
// magnitudes |Omega32| (electric) and |Omega21| (magnetic) sharing phase phi,
// detunings delta1..3, bidirectional incoherent pump r1, and the projection
// of the wave-vector mismatch K = k_c - 2 k_p onto the atom position.
struct DriveConfig {
  double omega31_mag = 1.0;
  double psi = 0.0;
  double omega32_mag = 1e-6;
  double omega21_mag = 1e-6;
  double phi = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
  double r1 = 0.0;
  double k_mismatch_phase = 0.0;

  // Multiphoton detuning; derived, never stored.
  double multiphoton_detuning() const { return delta2 + delta3 - delta1; }

  Complex omega31() const { return std::polar(omega31_mag, psi); }
  Complex omega32() const { return std::polar(omega32_mag, phi); }
  Complex omega21() const { return std::polar(omega21_mag, phi); }
};

// Macroscopic medium constants in natural units: dipole magnitudes in units
// of e*a0 (so mu21/d32 ~ alpha carries the magnetic suppression), probe field
// amplitudes E_p = B_p = 1, overall response prefactors folded into the
// particle density.
struct MediumParams {
  double density_N = 1.0;
  double d32 = 1.0;
  double mu21 = kFineStructure;
  double Phi = 0.0;
  double alpha = kFineStructure;
};

struct ValidationIssue {
  enum class Severity { violation, warning };
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool empty() const { return issues.empty(); }
  bool ok() const {
    for (const auto& i : issues) {
      if (i.severity == ValidationIssue::Severity::violation) return false;
    }
    return true;
  }
  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& i : issues) {
      if (i.severity == ValidationIssue::Severity::violation) ++n;
    }
    return n;
  }
  std::string to_string() const;
};

ValidationReport validate(const LevelSystem& system, const DriveConfig& drive,
                          const MediumParams& medium);

namespace presets {

// Canonical closed-loop operating point used by the bundled scans:
// Omega31 = 1, all detunings zero, weak probes, gamma3 = alpha^2.
DriveConfig closed_loop();

// Incoherently pumped reference point: r1 = 1, no control field.
DriveConfig incoherent_pump();

}  // namespace presets

}  // namespace loopresp
