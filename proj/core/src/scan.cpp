#include "loopresp/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "loopresp/version.hpp"

namespace loopresp {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::delta2: return "delta2";
    case Axis::delta3: return "delta3";
    case Axis::omega31: return "omega31";
    case Axis::r1: return "r1";
    case Axis::sigma: return "sigma";
    case Axis::phase_loop: return "phase_loop";
  }
  return "?";
}

const char* output_name(Output o) {
  switch (o) {
    case Output::d21: return "d21";
    case Output::d32: return "d32";
    case Output::c21: return "c21";
    case Output::c32: return "c32";
    case Output::chi_e: return "chi_e";
    case Output::chi_m: return "chi_m";
    case Output::xi_he: return "xi_he";
    case Output::xi_eh: return "xi_eh";
    case Output::n: return "n";
    case Output::enhancement: return "enhancement";
    case Output::populations: return "populations";
  }
  return "?";
}

std::optional<Axis> axis_from_name(const std::string& name) {
  for (Axis a : {Axis::delta2, Axis::delta3, Axis::omega31, Axis::r1, Axis::sigma,
                 Axis::phase_loop}) {
    if (name == axis_name(a)) return a;
  }
  return std::nullopt;
}

std::optional<Output> output_from_name(const std::string& name) {
  for (Output o : {Output::d21, Output::d32, Output::c21, Output::c32, Output::chi_e,
                   Output::chi_m, Output::xi_he, Output::xi_eh, Output::n,
                   Output::enhancement, Output::populations}) {
    if (name == output_name(o)) return o;
  }
  return std::nullopt;
}

PointResult run_point(const LevelSystem& system, const DriveConfig& drive,
                      const MediumParams& medium, Mode mode) {
  const ValidationReport report = validate(system, drive, medium);
  if (!report.ok()) {
    throw std::invalid_argument("run_point: invalid configuration\n" + report.to_string());
  }
  PointResult out;
  out.coeffs = extract_coefficients(system, drive, mode);
  out.response = assemble(out.coeffs, medium, drive);
  out.populations = population_forms(system, drive, mode).populations;
  return out;
}

namespace {

// |Im| of a direct coefficient as a function of its probe detuning.
double direct_im(const LevelSystem& system, const DriveConfig& drive, Mode mode,
                 bool magnetic, double detuning) {
  DriveConfig d = drive;
  if (magnetic) {
    d.delta3 = detuning;
  } else {
    d.delta2 = detuning;
  }
  const RawCoefficients raw = extract_raw_coefficients(system, d, mode);
  return std::abs(magnetic ? raw.d21.imag() : raw.d32.imag());
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double extremal_detuning(const LevelSystem& system, const DriveConfig& drive, Mode mode,
                         bool magnetic) {
  auto f = [&](double x) { return direct_im(system, drive, mode, magnetic, x); };

  // Candidate seeds: line center and (for the driven system) the dressed
  // resonances at (delta1 +- sqrt(delta1^2 + 4 |Omega31|^2)) / 2.
  std::vector<double> candidates{0.0};
  const double w = (mode == Mode::closed_loop) ? drive.omega31_mag : 0.0;
  const double d1 = (mode == Mode::closed_loop) ? drive.delta1 : 0.0;
  if (w > 0) {
    const double rabi = std::sqrt(d1 * d1 + 4.0 * w * w);
    candidates.push_back(0.5 * (d1 + rabi));
    candidates.push_back(0.5 * (d1 - rabi));
    candidates.push_back(w);
    candidates.push_back(-w);
  }
  double span = 4.0;
  for (double c : candidates) span = std::max(span, 1.2 * std::abs(c));
  const int n_grid = 201;
  for (int i = 0; i < n_grid; ++i) {
    candidates.push_back(-span + 2.0 * span * i / (n_grid - 1));
  }

  double best_x = 0.0;
  double best_f = -1.0;
  for (double c : candidates) {
    const double v = f(c);
    if (v > best_f) {
      best_f = v;
      best_x = c;
    }
  }
  const double bracket = std::max(1.0, 2.0 * (2.0 * span / (n_grid - 1)));
  return golden_max(f, best_x - bracket, best_x + bracket, 1e-6);
}

}  // namespace

double extremal_detuning_d21(const LevelSystem& system, const DriveConfig& drive, Mode mode) {
  return extremal_detuning(system, drive, mode, true);
}

double extremal_detuning_d32(const LevelSystem& system, const DriveConfig& drive, Mode mode) {
  return extremal_detuning(system, drive, mode, false);
}

namespace {

void apply_axis(const ScanSpec& spec, double value, LevelSystem* system, DriveConfig* drive) {
  *system = spec.system;
  *drive = spec.drive;
  switch (spec.axis) {
    case Axis::delta2:
      drive->delta2 = value;
      break;
    case Axis::delta3:
      drive->delta3 = value;
      break;
    case Axis::omega31:
      if (spec.mode == Mode::incoherent) {
        throw std::invalid_argument("run_scan: omega31 axis requires closed_loop mode");
      }
      drive->omega31_mag = value;
      break;
    case Axis::r1:
      if (spec.mode == Mode::closed_loop) {
        throw std::invalid_argument("run_scan: r1 axis requires incoherent mode");
      }
      drive->r1 = value;
      break;
    case Axis::sigma:
      drive->delta2 = -value;
      drive->delta3 = value;
      drive->delta1 = 0.0;
      break;
    case Axis::phase_loop:
      drive->psi = value;
      break;
  }
}

int output_width(Output o) {
  switch (o) {
    case Output::enhancement: return 1;
    case Output::populations: return 3;
    default: return 2;
  }
}

void emit_output(Output o, const PointResult& p, std::vector<double>* row) {
  switch (o) {
    case Output::d21:
      row->push_back(p.coeffs.d21.real());
      row->push_back(p.coeffs.d21.imag());
      break;
    case Output::d32:
      row->push_back(p.coeffs.d32.real());
      row->push_back(p.coeffs.d32.imag());
      break;
    case Output::c21:
      row->push_back(p.coeffs.c21.real());
      row->push_back(p.coeffs.c21.imag());
      break;
    case Output::c32:
      row->push_back(p.coeffs.c32.real());
      row->push_back(p.coeffs.c32.imag());
      break;
    case Output::chi_e:
      row->push_back(p.response.chi_e.real());
      row->push_back(p.response.chi_e.imag());
      break;
    case Output::chi_m:
      row->push_back(p.response.chi_m.real());
      row->push_back(p.response.chi_m.imag());
      break;
    case Output::xi_he:
      row->push_back(p.response.xi_he.real());
      row->push_back(p.response.xi_he.imag());
      break;
    case Output::xi_eh:
      row->push_back(p.response.xi_eh.real());
      row->push_back(p.response.xi_eh.imag());
      break;
    case Output::n:
      row->push_back(p.response.n.real());
      row->push_back(p.response.n.imag());
      break;
    case Output::enhancement:
      row->push_back(p.response.enhancement);
      break;
    case Output::populations:
      row->push_back(p.populations.rho11);
      row->push_back(p.populations.rho22);
      row->push_back(p.populations.rho33);
      break;
  }
}

std::vector<double> evaluate_row(const ScanSpec& spec, double value) {
  LevelSystem system;
  DriveConfig drive;
  apply_axis(spec, value, &system, &drive);

  std::vector<double> row;
  row.push_back(value);

  if (spec.track_extremal) {
    const double peak3 = extremal_detuning_d21(system, drive, spec.mode);
    const double peak2 = extremal_detuning_d32(system, drive, spec.mode);
    DriveConfig tracked = drive;
    tracked.delta3 = peak3;
    tracked.delta2 = peak2;
    PointResult p = run_point(system, tracked, spec.medium, spec.mode);
    // The direct terms are reported at their own tracked detunings.
    DriveConfig d21_only = drive;
    d21_only.delta3 = peak3;
    DriveConfig d32_only = drive;
    d32_only.delta2 = peak2;
    p.coeffs.d21 = extract_raw_coefficients(system, d21_only, spec.mode).d21;
    p.coeffs.d32 = extract_raw_coefficients(system, d32_only, spec.mode).d32;
    row.push_back(peak3);
    row.push_back(peak2);
    for (Output o : spec.outputs) emit_output(o, p, &row);
    return row;
  }

  const PointResult p = run_point(system, drive, spec.medium, spec.mode);
  for (Output o : spec.outputs) emit_output(o, p, &row);
  return row;
}

}  // namespace

ScanResult run_scan(const ScanSpec& spec, int parallelism) {
  if (spec.count < 2) throw std::invalid_argument("run_scan: count must be >= 2");
  if (!(spec.start < spec.stop)) throw std::invalid_argument("run_scan: start must be < stop");
  // Surface axis/mode mismatches before spawning workers.
  {
    LevelSystem s;
    DriveConfig d;
    apply_axis(spec, spec.start, &s, &d);
  }

  ScanResult result;
  result.columns.push_back(std::string("axis:") + axis_name(spec.axis));
  if (spec.track_extremal) {
    result.columns.push_back("d21_peak_delta3");
    result.columns.push_back("d32_peak_delta2");
  }
  for (Output o : spec.outputs) {
    const char* base = output_name(o);
    if (output_width(o) == 1) {
      result.columns.push_back(base);
    } else if (o == Output::populations) {
      result.columns.push_back("rho11");
      result.columns.push_back("rho22");
      result.columns.push_back("rho33");
    } else {
      result.columns.push_back(std::string(base) + "_re");
      result.columns.push_back(std::string(base) + "_im");
    }
  }

  const std::size_t width = result.columns.size();
  result.rows.assign(spec.count, {});

  std::atomic<int> next{0};
  std::atomic<int> failures{0};
  const int workers = std::max(1, std::min(parallelism, spec.count));

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= spec.count) return;
      const double value =
          spec.start + (spec.stop - spec.start) * i / static_cast<double>(spec.count - 1);
      try {
        result.rows[i] = evaluate_row(spec, value);
      } catch (const std::exception& e) {
        std::vector<double> row(width, std::numeric_limits<double>::quiet_NaN());
        row[0] = value;
        result.rows[i] = std::move(row);
        failures.fetch_add(1);
        std::fprintf(stderr, "warning: scan row %d (%s = %.6g) failed: %s\n", i,
                     axis_name(spec.axis), value, e.what());
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.failures = failures.load();
  return result;
}

namespace {

void echo_config(std::ostream& out, const ScanSpec& spec) {
  const LevelSystem& s = spec.system;
  const DriveConfig& d = spec.drive;
  const MediumParams& m = spec.medium;
  out << "# config={\"mode\":\"" << (spec.mode == Mode::closed_loop ? "closed_loop" : "incoherent")
      << "\",\"system\":{\"gamma1\":" << fmt17(s.gamma1) << ",\"gamma2\":" << fmt17(s.gamma2)
      << ",\"gamma3\":" << fmt17(s.gamma3) << "},\"drive\":{\"omega31_mag\":"
      << fmt17(d.omega31_mag) << ",\"psi\":" << fmt17(d.psi) << ",\"omega32_mag\":"
      << fmt17(d.omega32_mag) << ",\"omega21_mag\":" << fmt17(d.omega21_mag)
      << ",\"phi\":" << fmt17(d.phi) << ",\"delta1\":" << fmt17(d.delta1)
      << ",\"delta2\":" << fmt17(d.delta2) << ",\"delta3\":" << fmt17(d.delta3)
      << ",\"r1\":" << fmt17(d.r1) << ",\"k_mismatch_phase\":" << fmt17(d.k_mismatch_phase)
      << "},\"medium\":{\"density_N\":" << fmt17(m.density_N) << ",\"d32\":" << fmt17(m.d32)
      << ",\"mu21\":" << fmt17(m.mu21) << ",\"Phi\":" << fmt17(m.Phi)
      << ",\"alpha\":" << fmt17(m.alpha) << "}}\n";
}

}  // namespace

void write_scan_csv(std::ostream& out, const ScanSpec& spec, const ScanResult& result) {
  out << "# loopresp " << kVersion << "\n";
  out << "# axis=" << axis_name(spec.axis) << " range=" << fmt17(spec.start) << ":"
      << fmt17(spec.stop) << ":" << spec.count << " seed=" << spec.seed
      << " track_extremal=" << (spec.track_extremal ? 1 : 0) << "\n";
  echo_config(out, spec);

  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out << ',';
    out << result.columns[c];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << fmt17(row[c]);
    }
    out << '\n';
  }
}

const char* scan_preset_name(ScanPreset p) {
  switch (p) {
    case ScanPreset::mag_direct_vs_delta3: return "mag_direct_vs_delta3";
    case ScanPreset::el_direct_vs_delta2: return "el_direct_vs_delta2";
    case ScanPreset::mag_direct_vs_delta3_incoherent: return "mag_direct_vs_delta3_incoherent";
    case ScanPreset::el_direct_vs_delta2_incoherent: return "el_direct_vs_delta2_incoherent";
    case ScanPreset::pump_sweep_closed: return "pump_sweep_closed";
    case ScanPreset::pump_sweep_incoherent: return "pump_sweep_incoherent";
    case ScanPreset::detuned_control: return "detuned_control";
    case ScanPreset::chirality_vs_sigma: return "chirality_vs_sigma";
  }
  return "?";
}

std::optional<ScanPreset> scan_preset_from_name(const std::string& name) {
  for (ScanPreset p :
       {ScanPreset::mag_direct_vs_delta3, ScanPreset::el_direct_vs_delta2,
        ScanPreset::mag_direct_vs_delta3_incoherent, ScanPreset::el_direct_vs_delta2_incoherent,
        ScanPreset::pump_sweep_closed, ScanPreset::pump_sweep_incoherent,
        ScanPreset::detuned_control, ScanPreset::chirality_vs_sigma}) {
    if (name == scan_preset_name(p)) return p;
  }
  return std::nullopt;
}

ScanSpec make_preset_scan(ScanPreset preset) {
  ScanSpec spec;
  switch (preset) {
    case ScanPreset::mag_direct_vs_delta3:
      spec.axis = Axis::delta3;
      spec.outputs = {Output::d21};
      break;
    case ScanPreset::el_direct_vs_delta2:
      spec.axis = Axis::delta2;
      spec.outputs = {Output::d32};
      break;
    case ScanPreset::mag_direct_vs_delta3_incoherent:
      spec.mode = Mode::incoherent;
      spec.drive = presets::incoherent_pump();
      spec.axis = Axis::delta3;
      spec.outputs = {Output::d21};
      break;
    case ScanPreset::el_direct_vs_delta2_incoherent:
      spec.mode = Mode::incoherent;
      spec.drive = presets::incoherent_pump();
      spec.axis = Axis::delta2;
      spec.outputs = {Output::d32};
      break;
    case ScanPreset::pump_sweep_closed:
      spec.axis = Axis::omega31;
      spec.start = 0.0;
      spec.stop = 4.0;
      spec.track_extremal = true;
      spec.outputs = {Output::d21, Output::d32};
      break;
    case ScanPreset::pump_sweep_incoherent:
      spec.mode = Mode::incoherent;
      spec.drive = presets::incoherent_pump();
      spec.axis = Axis::r1;
      spec.start = 0.0;
      spec.stop = 4.0;
      spec.track_extremal = true;
      spec.outputs = {Output::d21, Output::d32};
      break;
    case ScanPreset::detuned_control:
      spec.axis = Axis::delta2;
      spec.drive.delta1 = 2.0;
      spec.outputs = {Output::d21, Output::d32};
      break;
    case ScanPreset::chirality_vs_sigma:
      spec.axis = Axis::sigma;
      spec.outputs = {Output::c21, Output::c32, Output::xi_he, Output::xi_eh};
      break;
  }
  return spec;
}

}  // namespace loopresp
