#include "loopresp/analytic.hpp"

#include <cmath>

namespace loopresp {

namespace {

constexpr double kDenFloor = 1e-14;

void require(bool ok, const char* which) {
  if (!ok) throw DegenerateDenominator(which);
}

}  // namespace

AnalyticCoefficients general_coherences(const LevelSystem& system, const DriveConfig& drive) {
  const double g1 = system.gamma1;
  const double g2 = system.gamma2;
  const double g3 = system.gamma3;
  const double gs = system.gamma_sum();
  const double gam = (g1 + g2) * (g1 + g2) * g3;
  const double d1 = drive.delta1;
  const double d2 = drive.delta2;
  const double d3 = drive.delta3;
  const Complex o31 = drive.omega31();
  const double w2 = std::norm(o31);

  AnalyticCoefficients out;
  out.gamma_s = gs;
  out.big_gamma = gam;
  out.b = 4.0 * d1 * d1 * g3 + gam + 4.0 * w2 * (g2 + 2.0 * g3);
  out.branch = (std::abs(drive.multiphoton_detuning()) <= kResonanceTol) ? Branch::resonant
                                                                         : Branch::detuned;
  require(std::abs(out.b) >= kDenFloor, "B");

  const Complex num_d21 =
      8.0 * d1 * d1 * d1 * g3 +
      4.0 * kI * d1 * d1 * g3 * (2.0 * kI * d3 + gs) +
      d3 * (8.0 * w2 * (g2 - g3) - 2.0 * gam) +
      2.0 * d1 * (-4.0 * w2 * (g2 - 2.0 * g3) + gam) -
      kI * ((4.0 * w2 * g2 - gam) * gs - 4.0 * w2 * g3 * g3);
  const Complex den_d21 =
      4.0 * w2 + (2.0 * d3 - kI * g3) * (2.0 * d1 - 2.0 * d3 + kI * gs);
  require(std::abs(den_d21) >= kDenFloor, "direct-magnetic");
  out.d21 = (2.0 / out.b) * num_d21 / den_d21;

  const Complex num_c21 =
      4.0 * w2 * (g2 - g3) + (2.0 * d1 + kI * (g1 + g2)) * g3 * (-2.0 * d2 - kI * gs);
  const Complex den_c21 =
      4.0 * w2 + (2.0 * kI * (d1 - d2) + g3) * (-2.0 * kI * d2 + gs);
  require(std::abs(den_c21) >= kDenFloor, "cross-magnetic");
  out.c21 = -(4.0 * o31 / out.b) * num_c21 / den_c21;

  const Complex num_c32 =
      4.0 * w2 * (-g2 + g3) + (2.0 * d1 + kI * (g1 + g2)) * g3 * (2.0 * d1 - 2.0 * d3 - kI * gs);
  const Complex den_c32 =
      4.0 * w2 + (2.0 * d3 + kI * g3) * (2.0 * d1 - 2.0 * d3 - kI * gs);
  require(std::abs(den_c32) >= kDenFloor, "cross-electric");
  out.c32 = (4.0 * o31 / out.b) * num_c32 / den_c32;

  const Complex num_d32 = 2.0 * (d2 - d1) * g2 + kI * g3 * (2.0 * kI * d2 + g1 + g3);
  const Complex den_d32 =
      4.0 * w2 + (-2.0 * kI * d1 + 2.0 * kI * d2 + g3) * (2.0 * kI * d2 + gs);
  require(std::abs(den_d32) >= kDenFloor, "direct-electric");
  out.d32 = -(8.0 * w2 / out.b) * num_d32 / den_d32;

  return out;
}

AnalyticCoefficients resonant_coherences(const LevelSystem& system, const DriveConfig& drive) {
  const double g1 = system.gamma1;
  const double g2 = system.gamma2;
  const double g3 = system.gamma3;
  const double gs = system.gamma_sum();
  const double gam = (g1 + g2) * (g1 + g2) * g3;
  const double d2 = drive.delta2;
  const double d3 = drive.delta3;
  const Complex o31 = drive.omega31();
  const double w2 = std::norm(o31);

  AnalyticCoefficients out;
  out.gamma_s = gs;
  out.big_gamma = gam;
  out.branch = Branch::resonant;
  out.c_plus = 4.0 * w2 + (2.0 * kI * d3 + g3) * (-2.0 * kI * d2 + gs);
  out.c_minus = 4.0 * w2 + (-2.0 * kI * d3 + g3) * (2.0 * kI * d2 + gs);
  out.d = 4.0 * (d2 + d3) * (d2 + d3) * g3 + gam + 4.0 * w2 * (g2 + 2.0 * g3);
  out.b = out.d;
  require(std::abs(out.d) >= kDenFloor, "D");
  require(std::abs(out.c_plus) >= kDenFloor, "C+");
  require(std::abs(out.c_minus) >= kDenFloor, "C-");

  const Complex num_d21 =
      8.0 * kI * d2 * d2 * d2 * g3 +
      4.0 * d2 * d2 * (4.0 * kI * d3 - gs) * g3 -
      (4.0 * d3 * d3 * g3 + gam) * gs +
      4.0 * w2 * (g2 * (g1 + g2) + (2.0 * kI * d3 + g2) * g3 - g3 * g3) +
      2.0 * kI * d2 *
          (-4.0 * w2 * (g2 - 2.0 * g3) + gam + 4.0 * g3 * d3 * (d3 + kI * gs));
  out.d21 = -(2.0 * kI / (out.c_plus * out.d)) * num_d21;

  const Complex num_c21 =
      4.0 * w2 * (g2 - g3) -
      (2.0 * (d2 + d3) + kI * (g1 + g2)) * g3 * (2.0 * d2 + kI * gs);
  out.c21 = -(4.0 * o31 / (out.c_plus * out.d)) * num_c21;

  const Complex num_c32 =
      4.0 * w2 * (g2 - g3) -
      (2.0 * (d2 + d3) + kI * (g1 + g2)) * g3 * (2.0 * d2 - kI * gs);
  out.c32 = -(4.0 * o31 / (out.c_minus * out.d)) * num_c32;

  const Complex num_d32 = 2.0 * kI * d3 * g2 + g3 * (2.0 * kI * d2 + g1 + g3);
  out.d32 = -(8.0 * kI / (out.c_minus * out.d)) * w2 * num_d32;

  return out;
}

AnalyticCoefficients incoherent_coherences(const LevelSystem& system, double r1, double delta2,
                                           double delta3) {
  if (r1 < 0) throw std::invalid_argument("incoherent_coherences: r1 must be >= 0");
  const double g1 = system.gamma1;
  const double g2 = system.gamma2;
  const double g3 = system.gamma3;
  const double gs = system.gamma_sum();

  AnalyticCoefficients out;
  out.gamma_s = gs;
  out.big_gamma = (g1 + g2) * (g1 + g2) * g3;
  out.branch = Branch::resonant;
  const double den = (g1 + g2) * g3 + r1 * (g2 + 2.0 * g3);
  out.b = den;
  out.d = den;
  out.c_plus = 2.0 * kI * delta3 + r1 + g3;
  out.c_minus = 2.0 * kI * delta2 + gs + r1;

  out.d21 = 2.0 * kI * (r1 * (g3 - g2) + (g1 + g2) * g3) / (out.c_plus * den);
  out.d32 = 2.0 * kI * r1 * (g2 - g3) / (out.c_minus * den);
  out.c21 = 0.0;
  out.c32 = 0.0;
  return out;
}

Populations incoherent_populations(const LevelSystem& system, double r1) {
  const double g1 = system.gamma1;
  const double g2 = system.gamma2;
  const double g3 = system.gamma3;
  const double c = r1 * g2 + 2.0 * r1 * g3 + g1 * g3 + g2 * g3;
  return {(r1 + g1 + g2) * g3 / c, r1 * g2 / c, r1 * g3 / c};
}

Populations strong_drive_population_limits(const LevelSystem& system) {
  const double ratio = system.gamma2 / system.gamma3;
  return {1.0 / (ratio + 2.0), 1.0 / (2.0 / ratio + 1.0), 1.0 / (ratio + 2.0)};
}

double zero_absorption_pump_rate(const LevelSystem& system) {
  return (system.gamma1 + system.gamma2) * system.gamma3 /
         (system.gamma2 - system.gamma3);
}

PopulationForms population_forms(const LevelSystem& system, const DriveConfig& drive, Mode mode) {
  PopulationForms out;
  if (mode == Mode::incoherent) {
    const Populations p = incoherent_populations(system, drive.r1);
    out.populations = p;
    const double g3 = system.gamma3;
    const double gs = system.gamma_sum();
    out.d21 = 2.0 * (p.rho11 - p.rho22) /
              (2.0 * drive.delta3 - kI * (drive.r1 + g3));
    out.d32 = 2.0 * (p.rho22 - p.rho33) /
              (2.0 * drive.delta2 - kI * (drive.r1 + gs));
    return out;
  }

  // Closed loop: populations from the probe-free harmonic solve, coherence
  // coefficients from the same population-difference forms with the
  // closed-loop probe linewidths.
  DriveConfig bare = drive;
  bare.omega32_mag = 0.0;
  bare.omega21_mag = 0.0;
  bare.r1 = 0.0;
  const FloquetSolution sol =
      solve_harmonics(build_generator(system, bare, Mode::closed_loop), 0.0, 0.0);
  out.populations.rho11 = sol.r0.entries[kRho11].real();
  out.populations.rho22 = sol.r0.entries[kRho22].real();
  out.populations.rho33 = sol.r0.rho33().real();
  const RawCoefficients raw = extract_raw_coefficients(system, bare, Mode::closed_loop);
  out.d21 = raw.d21;
  out.d32 = raw.d32;
  return out;
}

}  // namespace loopresp
