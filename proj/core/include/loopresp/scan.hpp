#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loopresp/analytic.hpp"
#include "loopresp/floquet.hpp"
#include "loopresp/model.hpp"
#include "loopresp/response.hpp"

namespace loopresp {

enum class Axis { delta2, delta3, omega31, r1, sigma, phase_loop };

enum class Output {
  d21,
  d32,
  c21,
  c32,
  chi_e,
  chi_m,
  xi_he,
  xi_eh,
  n,
  enhancement,
  populations,
};

const char* axis_name(Axis a);
const char* output_name(Output o);
std::optional<Axis> axis_from_name(const std::string& name);
std::optional<Output> output_from_name(const std::string& name);

// One sweep: `axis` runs over `count` equally spaced values in
// [start, stop]; everything else is taken from the fixed snapshot.
// sigma-axis semantics: delta2 = -sigma, delta3 = +sigma with the
// multiphoton detuning held at zero (delta1 = 0).
// track_extremal evaluates the direct coefficients at the probe detuning
// maximizing |Im| (pump-strength sweeps); the cross/response outputs then
// refer to the same tracked operating point.
struct ScanSpec {
  Mode mode = Mode::closed_loop;
  Axis axis = Axis::delta3;
  double start = -4.0;
  double stop = 4.0;
  int count = 161;
  LevelSystem system;
  DriveConfig drive = presets::closed_loop();
  MediumParams medium;
  std::vector<Output> outputs = {Output::d21, Output::d32};
  bool track_extremal = false;
  std::uint64_t seed = 0;
};

struct PointResult {
  ExpansionCoefficients coeffs;
  ResponseSet response;
  Populations populations;
};

// Full evaluation at a single parameter point.
PointResult run_point(const LevelSystem& system, const DriveConfig& drive,
                      const MediumParams& medium, Mode mode);

struct ScanResult {
  std::vector<std::string> columns;        // including the leading axis column
  std::vector<std::vector<double>> rows;   // NaN-filled on per-row failure
  int failures = 0;
};

// Evaluates all rows (in parallel when parallelism > 1) in deterministic
// axis order. Per-row failures become NaN rows and count toward `failures`.
ScanResult run_scan(const ScanSpec& spec, int parallelism = 1);

// CSV with '#'-prefixed metadata (version, config echo, seed), a header row,
// and full round-trip precision values.
void write_scan_csv(std::ostream& out, const ScanSpec& spec, const ScanResult& result);

// Probe detuning maximizing |Im| of the tracked direct coefficient, located
// by a coarse grid plus golden-section refinement to 1e-6.
double extremal_detuning_d21(const LevelSystem& system, const DriveConfig& drive, Mode mode);
double extremal_detuning_d32(const LevelSystem& system, const DriveConfig& drive, Mode mode);

// Named sweeps used for the bundled figure-style outputs.
enum class ScanPreset {
  mag_direct_vs_delta3,            // closed loop, d21 against its probe detuning
  el_direct_vs_delta2,             // closed loop, d32 against its probe detuning
  mag_direct_vs_delta3_incoherent,
  el_direct_vs_delta2_incoherent,
  pump_sweep_closed,               // omega31 in [0,4], extremal-tracked
  pump_sweep_incoherent,           // r1 in [0,4], extremal-tracked
  detuned_control,                 // delta1 = 2, d32 against delta2
  chirality_vs_sigma,              // sigma in [-4,4] at multiphoton resonance
};
const char* scan_preset_name(ScanPreset p);
std::optional<ScanPreset> scan_preset_from_name(const std::string& name);
ScanSpec make_preset_scan(ScanPreset preset);

}  // namespace loopresp
