// Command-line front end: single-point response evaluation, parameter scans
// with CSV output, and the verification suite.
//
// Exit codes: 0 success, 1 verify failure, 2 configuration/solver error,
// 3 partial scan failure (more than 10% of rows failed).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopresp/scan.hpp"
#include "loopresp/timedomain.hpp"
#include "loopresp/verify.hpp"
#include "loopresp/version.hpp"

using nlohmann::json;
using namespace loopresp;

namespace {

struct Config {
  Mode mode = Mode::closed_loop;
  LevelSystem system;
  DriveConfig drive = presets::closed_loop();
  MediumParams medium;
  ScanSpec scan;
  std::uint64_t seed = 0;

  Config() {
    scan.system = system;
    scan.drive = drive;
    scan.medium = medium;
  }
};

void read_key(const json& j, const char* key, double* out) {
  if (j.contains(key)) *out = j.at(key).get<double>();
}

Mode parse_mode(const std::string& name) {
  if (name == "closed_loop") return Mode::closed_loop;
  if (name == "incoherent") return Mode::incoherent;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

Config load_config(const std::string& path) {
  Config cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j;
  in >> j;

  if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("system")) {
    const json& s = j.at("system");
    read_key(s, "gamma1", &cfg.system.gamma1);
    read_key(s, "gamma2", &cfg.system.gamma2);
    read_key(s, "gamma3", &cfg.system.gamma3);
  }
  if (j.contains("drive")) {
    const json& d = j.at("drive");
    read_key(d, "omega31_mag", &cfg.drive.omega31_mag);
    read_key(d, "psi", &cfg.drive.psi);
    read_key(d, "omega32_mag", &cfg.drive.omega32_mag);
    read_key(d, "omega21_mag", &cfg.drive.omega21_mag);
    read_key(d, "phi", &cfg.drive.phi);
    read_key(d, "delta1", &cfg.drive.delta1);
    read_key(d, "delta2", &cfg.drive.delta2);
    read_key(d, "delta3", &cfg.drive.delta3);
    read_key(d, "r1", &cfg.drive.r1);
    read_key(d, "k_mismatch_phase", &cfg.drive.k_mismatch_phase);
  }
  if (j.contains("medium")) {
    const json& m = j.at("medium");
    read_key(m, "density_N", &cfg.medium.density_N);
    read_key(m, "d32", &cfg.medium.d32);
    read_key(m, "mu21", &cfg.medium.mu21);
    read_key(m, "Phi", &cfg.medium.Phi);
    read_key(m, "alpha", &cfg.medium.alpha);
  }
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    if (s.contains("axis")) {
      const auto axis = axis_from_name(s.at("axis").get<std::string>());
      if (!axis) throw std::invalid_argument("unknown scan axis");
      cfg.scan.axis = *axis;
    }
    if (s.contains("range")) {
      const auto& r = s.at("range");
      cfg.scan.start = r.at(0).get<double>();
      cfg.scan.stop = r.at(1).get<double>();
      cfg.scan.count = r.at(2).get<int>();
    }
    if (s.contains("outputs")) {
      cfg.scan.outputs.clear();
      for (const auto& o : s.at("outputs")) {
        const auto out = output_from_name(o.get<std::string>());
        if (!out) throw std::invalid_argument("unknown scan output");
        cfg.scan.outputs.push_back(*out);
      }
    }
    if (s.contains("track_extremal")) {
      cfg.scan.track_extremal = s.at("track_extremal").get<bool>();
    }
  }
  return cfg;
}

int default_parallelism() {
  if (const char* env = std::getenv("LOOPRESP_PARALLELISM")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_complex(const char* name, Complex v) {
  std::cout << name << " = " << fmt17(v.real());
  if (v.imag() >= 0) std::cout << " + " << fmt17(v.imag()) << "i\n";
  else std::cout << " - " << fmt17(-v.imag()) << "i\n";
}

int cmd_point(const Config& cfg, const std::string& out_path) {
  const PointResult p = run_point(cfg.system, cfg.drive, cfg.medium, cfg.mode);
  const ValidationReport rep = validate(cfg.system, cfg.drive, cfg.medium);
  for (const auto& issue : rep.issues) {
    std::cerr << "warning: " << issue.message << "\n";
  }

  std::cout << "mode = " << (cfg.mode == Mode::closed_loop ? "closed_loop" : "incoherent")
            << "\n";
  std::cout << "branch = " << (p.coeffs.branch == Branch::resonant ? "resonant" : "detuned")
            << "\n";
  print_complex("d21", p.coeffs.d21);
  print_complex("d32", p.coeffs.d32);
  print_complex("c21", p.coeffs.c21);
  print_complex("c32", p.coeffs.c32);
  print_complex("chi_e", p.response.chi_e);
  print_complex("chi_m", p.response.chi_m);
  print_complex("xi_he", p.response.xi_he);
  print_complex("xi_eh", p.response.xi_eh);
  print_complex("n", p.response.n);
  print_complex("m1", p.response.m1);
  print_complex("m2", p.response.m2);
  std::cout << "enhancement = "
            << (p.response.enhancement_infinite ? "inf" : fmt17(p.response.enhancement)) << "\n";
  std::cout << "rho11 = " << fmt17(p.populations.rho11) << "\n";
  std::cout << "rho22 = " << fmt17(p.populations.rho22) << "\n";
  std::cout << "rho33 = " << fmt17(p.populations.rho33) << "\n";
  std::cout << "# prefactors N/(eps0*hbar) etc. set to 1; chi/xi scale with density_N\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << "d21_re,d21_im,d32_re,d32_im,c21_re,c21_im,c32_re,c32_im,"
           "chi_e_re,chi_e_im,chi_m_re,chi_m_im,xi_he_re,xi_he_im,xi_eh_re,xi_eh_im,"
           "n_re,n_im,enhancement,rho11,rho22,rho33\n";
    const auto row = {p.coeffs.d21,    p.coeffs.d32,    p.coeffs.c21,    p.coeffs.c32,
                      p.response.chi_e, p.response.chi_m, p.response.xi_he, p.response.xi_eh,
                      p.response.n};
    bool first = true;
    for (Complex v : row) {
      out << (first ? "" : ",") << fmt17(v.real()) << ',' << fmt17(v.imag());
      first = false;
    }
    out << ',' << fmt17(p.response.enhancement) << ',' << fmt17(p.populations.rho11) << ','
        << fmt17(p.populations.rho22) << ',' << fmt17(p.populations.rho33) << "\n";
  }
  return 0;
}

int cmd_scan(ScanSpec spec, const std::string& out_path, int parallelism) {
  const ScanResult result = run_scan(spec, parallelism);
  if (out_path.empty()) {
    write_scan_csv(std::cout, spec, result);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_scan_csv(out, spec, result);
  }
  if (result.failures > 0) {
    std::cerr << result.failures << " of " << spec.count << " rows failed\n";
    if (result.failures * 10 > spec.count) return 3;
  }
  return 0;
}

int cmd_verify(Suite suite, std::uint64_t seed) {
  const auto results = run_suite(suite, seed);
  double total = 0.0;
  for (const auto& r : results) {
    std::printf("[%s] %-34s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
    total += r.seconds;
  }
  std::printf("suite=%s seed=%llu properties=%zu total=%.2fs\n",
              suite == Suite::fast ? "fast" : "full",
              static_cast<unsigned long long>(seed), results.size(), total);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-level closed-loop ladder response simulator"};
  app.set_version_flag("--version", std::string("loopresp ") + kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string mode_name;
  std::string out_path;
  std::string axis_name_arg;
  std::string range_arg;
  std::string preset_name;
  std::string suite_name = "fast";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int parallelism = default_parallelism();
  bool track_extremal = false;
  bool track_set = false;

  std::map<std::string, double> overrides;
  auto add_override = [&](CLI::App* cmd, const char* flag, const char* help) {
    cmd->add_option_function<double>(
        flag, [&overrides, flag](double v) { overrides[flag] = v; }, help);
  };

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--mode", mode_name, "closed_loop or incoherent");
    add_override(cmd, "--gamma1", "decay rate |3>->|1>");
    add_override(cmd, "--gamma2", "decay rate |3>->|2>");
    add_override(cmd, "--gamma3", "decay rate |2>->|1>");
    add_override(cmd, "--omega31", "control Rabi magnitude");
    add_override(cmd, "--psi", "control phase");
    add_override(cmd, "--omega32", "electric probe Rabi magnitude");
    add_override(cmd, "--omega21", "magnetic probe Rabi magnitude");
    add_override(cmd, "--phi", "probe phase");
    add_override(cmd, "--delta1", "control detuning");
    add_override(cmd, "--delta2", "electric probe detuning");
    add_override(cmd, "--delta3", "magnetic probe detuning");
    add_override(cmd, "--r1", "incoherent pump rate");
    add_override(cmd, "--k-mismatch", "wave-vector mismatch phase K.r");
    add_override(cmd, "--density", "particle density");
    add_override(cmd, "--d32", "electric dipole magnitude");
    add_override(cmd, "--mu21", "magnetic dipole magnitude");
    add_override(cmd, "--Phi", "relative dipole phase");
    add_override(cmd, "--alpha", "fine-structure constant");
  };

  CLI::App* point = app.add_subcommand("point", "evaluate one parameter point");
  add_common(point);
  point->add_option("--out", out_path, "optional single-row CSV path");

  CLI::App* scan = app.add_subcommand("scan", "sweep one axis and write CSV");
  add_common(scan);
  scan->add_option("--axis", axis_name_arg,
                   "delta2|delta3|omega31|r1|sigma|phase_loop");
  scan->add_option("--range", range_arg, "start:stop:count");
  scan->add_option("--preset", preset_name,
                   "named sweep (mag_direct_vs_delta3, el_direct_vs_delta2, "
                   "mag_direct_vs_delta3_incoherent, el_direct_vs_delta2_incoherent, "
                   "pump_sweep_closed, pump_sweep_incoherent, detuned_control, "
                   "chirality_vs_sigma)");
  scan->add_option("--out", out_path, "output CSV path (default stdout)");
  scan->add_option("--seed", seed, "seed echoed into the CSV metadata")
      ->each([&](const std::string&) { seed_set = true; });
  scan->add_option("--parallelism", parallelism, "worker count")
      ->envname("LOOPRESP_PARALLELISM");
  scan->add_flag("--track-extremal", track_extremal,
                 "evaluate direct terms at their max-|Im| detuning")
      ->each([&](const std::string&) { track_set = true; });

  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", suite_name, "fast or full");
  verify->add_option("--seed", seed, "RNG seed for the randomized grids");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = load_config(config_path);
    if (!mode_name.empty()) cfg.mode = parse_mode(mode_name);

    auto apply_overrides = [&overrides](LevelSystem* sys, DriveConfig* drv,
                                        MediumParams* med) {
      auto ov = [&overrides](const char* key, double* target) {
        const auto it = overrides.find(key);
        if (it != overrides.end()) *target = it->second;
      };
      ov("--gamma1", &sys->gamma1);
      ov("--gamma2", &sys->gamma2);
      ov("--gamma3", &sys->gamma3);
      ov("--omega31", &drv->omega31_mag);
      ov("--psi", &drv->psi);
      ov("--omega32", &drv->omega32_mag);
      ov("--omega21", &drv->omega21_mag);
      ov("--phi", &drv->phi);
      ov("--delta1", &drv->delta1);
      ov("--delta2", &drv->delta2);
      ov("--delta3", &drv->delta3);
      ov("--r1", &drv->r1);
      ov("--k-mismatch", &drv->k_mismatch_phase);
      ov("--density", &med->density_N);
      ov("--d32", &med->d32);
      ov("--mu21", &med->mu21);
      ov("--Phi", &med->Phi);
      ov("--alpha", &med->alpha);
    };
    apply_overrides(&cfg.system, &cfg.drive, &cfg.medium);

    if (point->parsed()) {
      return cmd_point(cfg, out_path);
    }

    if (scan->parsed()) {
      ScanSpec spec;
      if (!preset_name.empty()) {
        const auto preset = scan_preset_from_name(preset_name);
        if (!preset) throw std::invalid_argument("unknown preset '" + preset_name + "'");
        spec = make_preset_scan(*preset);
        // Explicit parameter flags still apply on top of the preset snapshot.
        apply_overrides(&spec.system, &spec.drive, &spec.medium);
      } else {
        spec = cfg.scan;
        spec.mode = cfg.mode;
        spec.system = cfg.system;
        spec.drive = cfg.drive;
        spec.medium = cfg.medium;
      }
      if (!axis_name_arg.empty()) {
        const auto axis = axis_from_name(axis_name_arg);
        if (!axis) throw std::invalid_argument("unknown axis '" + axis_name_arg + "'");
        spec.axis = *axis;
      }
      if (!range_arg.empty()) {
        double a = 0, b = 0;
        int n = 0;
        if (std::sscanf(range_arg.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3) {
          throw std::invalid_argument("--range expects start:stop:count");
        }
        spec.start = a;
        spec.stop = b;
        spec.count = n;
      }
      if (seed_set) spec.seed = seed;
      else spec.seed = cfg.seed;
      if (track_set) spec.track_extremal = track_extremal;
      return cmd_scan(spec, out_path, parallelism);
    }

    if (verify->parsed()) {
      Suite suite;
      if (suite_name == "fast") suite = Suite::fast;
      else if (suite_name == "full") suite = Suite::full;
      else throw std::invalid_argument("--suite expects fast or full");
      return cmd_verify(suite, seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
