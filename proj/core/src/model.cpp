#include "loopresp/model.hpp"

#include <algorithm>
#include <sstream>

namespace loopresp {

namespace {

void violation(ValidationReport& r, std::string msg) {
  r.issues.push_back({ValidationIssue::Severity::violation, std::move(msg)});
}

void warning(ValidationReport& r, std::string msg) {
  r.issues.push_back({ValidationIssue::Severity::warning, std::move(msg)});
}

}  // namespace

ValidationReport validate(const LevelSystem& system, const DriveConfig& drive,
                          const MediumParams& medium) {
  ValidationReport report;

  if (system.gamma1 < 0) violation(report, "negative rate gamma1");
  if (system.gamma2 < 0) violation(report, "negative rate gamma2");
  if (system.gamma3 < 0) violation(report, "negative rate gamma3");
  if (system.gamma1 + system.gamma2 <= 0) {
    violation(report, "upper state must decay: gamma1 + gamma2 > 0 required");
  }

  if (drive.omega31_mag < 0) violation(report, "negative control Rabi magnitude");
  if (drive.omega32_mag < 0) violation(report, "negative electric probe magnitude");
  if (drive.omega21_mag < 0) violation(report, "negative magnetic probe magnitude");
  if (drive.r1 < 0) violation(report, "negative incoherent pump rate r1");

  if (medium.density_N < 0) violation(report, "negative particle density");
  if (medium.d32 <= 0) violation(report, "electric dipole magnitude d32 must be > 0");
  if (medium.mu21 <= 0) violation(report, "magnetic dipole magnitude mu21 must be > 0");
  if (medium.alpha <= 0) violation(report, "fine-structure constant must be > 0");

  // Linear-response guard: probes must stay well below the fastest relevant
  // coherence scale. Warn only; the extraction uses its own internal epsilon.
  double scale = system.gamma1 + system.gamma2;
  if (drive.omega31_mag > 0) scale = std::min(scale, drive.omega31_mag);
  if (scale > 0) {
    if (drive.omega32_mag > 0.1 * scale) {
      warning(report, "electric probe beyond linear regime (omega32_mag > 0.1 x smallest scale)");
    }
    if (drive.omega21_mag > 0.1 * scale) {
      warning(report, "magnetic probe beyond linear regime (omega21_mag > 0.1 x smallest scale)");
    }
  }

  return report;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& i : issues) {
    out << (i.severity == ValidationIssue::Severity::violation ? "violation: " : "warning: ")
        << i.message << '\n';
  }
  return out.str();
}

namespace presets {

DriveConfig closed_loop() {
  DriveConfig d;
  d.omega31_mag = 1.0;
  d.omega32_mag = 1e-6;
  d.omega21_mag = 1e-6;
  d.r1 = 0.0;
  return d;
}

DriveConfig incoherent_pump() {
  DriveConfig d;
  d.omega31_mag = 0.0;
  d.omega32_mag = 1e-6;
  d.omega21_mag = 1e-6;
  d.r1 = 1.0;
  d.delta1 = 0.0;
  return d;
}

}  // namespace presets

}  // namespace loopresp
