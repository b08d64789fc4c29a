#include <doctest.h>

#include <random>

#include "loopresp/analytic.hpp"

using namespace loopresp;

namespace {

constexpr double kA2 = kFineStructure * kFineStructure;

double rel(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-30);
}

}  // namespace

TEST_CASE("cross coefficients vanish with the control field") {
  LevelSystem sys;
  DriveConfig d = presets::closed_loop();
  d.omega31_mag = 0.0;
  const AnalyticCoefficients a = general_coherences(sys, d);
  CHECK(a.c21 == Complex{0.0});
  CHECK(a.c32 == Complex{0.0});
  CHECK(a.d32 == Complex{0.0});  // carries |Omega31|^2
}

TEST_CASE("resonant forms equal the general forms at delta1 = delta2 + delta3") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> det(-5.0, 5.0);
  std::uniform_real_distribution<double> rate(0.3, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);

  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    LevelSystem sys;
    sys.gamma1 = rate(rng);
    sys.gamma2 = rate(rng);
    sys.gamma3 = 0.5 * rate(rng);
    DriveConfig d;
    d.omega31_mag = rate(rng);
    d.psi = ang(rng);
    d.delta2 = det(rng);
    d.delta3 = det(rng);
    d.delta1 = d.delta2 + d.delta3;
    const AnalyticCoefficients g = general_coherences(sys, d);
    const AnalyticCoefficients r = resonant_coherences(sys, d);
    worst = std::max({worst, rel(g.d21, r.d21), rel(g.d32, r.d32), rel(g.c21, r.c21),
                      rel(g.c32, r.c32)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("cross-term numerator gap identity at resonance") {
  // c21 C+ - c32 C- = -(4 Omega31 / D) * 2 gamma3 gamma_s ((g1+g2) - 2i(d2+d3))
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> det(-4.0, 4.0);
  std::uniform_real_distribution<double> rate(0.3, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);

  for (int k = 0; k < 40; ++k) {
    LevelSystem sys;
    sys.gamma1 = rate(rng);
    sys.gamma2 = rate(rng);
    sys.gamma3 = 0.5 * rate(rng);
    DriveConfig d;
    d.omega31_mag = rate(rng);
    d.psi = ang(rng);
    d.delta2 = det(rng);
    d.delta3 = det(rng);
    const AnalyticCoefficients r = resonant_coherences(sys, d);
    const Complex lhs = r.c21 * r.c_plus - r.c32 * r.c_minus;
    const Complex rhs = -(4.0 * d.omega31() / r.d) * 2.0 * sys.gamma3 * r.gamma_s *
                        Complex{sys.gamma1 + sys.gamma2, -2.0 * (d.delta2 + d.delta3)};
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(std::abs(lhs), 1.0));
  }

  // At the default rates the gap is O(gamma3): the two cross magnitudes are
  // close but not identical.
  LevelSystem sys;
  DriveConfig d = presets::closed_loop();
  const AnalyticCoefficients r = resonant_coherences(sys, d);
  CHECK(r.c_plus == std::conj(r.c_minus));
  CHECK(std::abs(std::abs(r.c21) - std::abs(r.c32)) < 5.0 * kA2);
  CHECK(std::abs(r.c21 - r.c32) > 1e-5);
}

TEST_CASE("incoherent closed forms: frozen values and the zero-absorption root") {
  LevelSystem sys;

  const AnalyticCoefficients at_r1 = incoherent_coherences(sys, 1.0, 0.0, 0.0);
  CHECK(rel(at_r1.d21, Complex{0.0, -1.999148182452828}) < 1e-12);
  CHECK(rel(at_r1.d32, Complex{0.0, 0.6664773696785073}) < 1e-12);
  CHECK(at_r1.c21 == Complex{0.0});
  CHECK(at_r1.c32 == Complex{0.0});

  const double root = zero_absorption_pump_rate(sys);
  CHECK(root == doctest::Approx(1.0650838088699027e-4).epsilon(1e-12));
  for (double d3 : {-2.0, 0.0, 1.5}) {
    CHECK(std::abs(incoherent_coherences(sys, root, 0.0, d3).d21) < 1e-12);
  }
  // The populations of |1> and |2> cross at the same pump rate.
  const Populations p = incoherent_populations(sys, root);
  CHECK(std::abs(p.rho11 - p.rho22) / p.rho22 < 1e-12);

  // r1 = 0 leaves the electric transition dark.
  CHECK(incoherent_coherences(sys, 0.0, 0.7, 0.0).d32 == Complex{0.0});
}

TEST_CASE("incoherent populations: frozen point and reconstruction identity") {
  LevelSystem sys;
  const Populations p = incoherent_populations(sys, 1.0);
  CHECK(p.rho11 == doctest::Approx(1.5972004252267472e-4).epsilon(1e-12));
  CHECK(p.rho22 == doctest::Approx(0.9997870399433033).epsilon(1e-14));
  CHECK(p.rho33 == doctest::Approx(5.324001417422491e-5).epsilon(1e-12));
  CHECK(p.rho11 + p.rho22 + p.rho33 == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> det(-5.0, 5.0);
  std::uniform_real_distribution<double> pump(0.0, 4.0);
  std::uniform_real_distribution<double> rate(0.2, 2.0);
  for (int k = 0; k < 50; ++k) {
    LevelSystem s;
    s.gamma1 = rate(rng);
    s.gamma2 = rate(rng);
    s.gamma3 = 0.3 * rate(rng);
    DriveConfig d = presets::incoherent_pump();
    d.r1 = pump(rng);
    d.delta2 = det(rng);
    d.delta3 = det(rng);
    const AnalyticCoefficients direct = incoherent_coherences(s, d.r1, d.delta2, d.delta3);
    const PopulationForms forms = population_forms(s, d, Mode::incoherent);
    CHECK(rel(forms.d21, direct.d21) < 1e-12);
    CHECK(rel(forms.d32, direct.d32) < 1e-12);
  }
}

TEST_CASE("strong-drive population limits") {
  LevelSystem sys;
  const Populations limits = strong_drive_population_limits(sys);
  CHECK(limits.rho11 == doctest::Approx(5.324568377614282e-5).epsilon(1e-12));
  CHECK(limits.rho22 == doctest::Approx(0.9998935086324479).epsilon(1e-14));
  CHECK(limits.rho11 == limits.rho33);
}

TEST_CASE("population forms in the driven mode use the solver populations") {
  LevelSystem sys;
  sys.gamma3 = 0.05;
  DriveConfig d = presets::closed_loop();
  d.omega31_mag = 2.0;
  d.delta1 = 0.5;
  const PopulationForms forms = population_forms(sys, d, Mode::closed_loop);
  CHECK(forms.populations.rho11 + forms.populations.rho22 + forms.populations.rho33 ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Only |3> feeds |2>: the ratio is pinned by the two decay rates.
  CHECK(forms.populations.rho33 / forms.populations.rho22 ==
        doctest::Approx(sys.gamma3 / sys.gamma2).epsilon(1e-10));
}

TEST_CASE("AC Stark doublet of the direct terms at the default drive") {
  LevelSystem sys;
  DriveConfig d = presets::closed_loop();

  auto im_d32 = [&](double delta2) {
    DriveConfig dd = d;
    dd.delta2 = delta2;
    return general_coherences(sys, dd).d32.imag();
  };
  auto im_d21 = [&](double delta3) {
    DriveConfig dd = d;
    dd.delta3 = delta3;
    return general_coherences(sys, dd).d21.imag();
  };

  auto peak = [](auto f, double lo, double hi) {
    double best = lo, best_f = -1.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = lo + (hi - lo) * i / 4000.0;
      const double v = std::abs(f(x));
      if (v > best_f) {
        best_f = v;
        best = x;
      }
    }
    return best;
  };

  // Electric direct term: extrema at +-|Omega31| (split exactly 2|Omega31|).
  const double p32 = peak(im_d32, 0.1, 2.5);
  CHECK(p32 == doctest::Approx(1.0).epsilon(2e-3));
  // Magnetic direct term: extrema at +-|Omega31|/sqrt(2) at this drive.
  const double p21 = peak(im_d21, 0.1, 2.5);
  CHECK(p21 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(2e-3));
  // The magnetic response is amplifying across the whole doublet here.
  CHECK(im_d21(0.0) < 0.0);
  CHECK(im_d21(p21) < 0.0);
}

TEST_CASE("detuned control moves the electric extremum to the dressed position") {
  LevelSystem sys;
  DriveConfig d = presets::closed_loop();
  d.delta1 = 2.0;
  double best = 0.0, best_f = -1.0;
  for (int i = 0; i <= 8000; ++i) {
    const double x = -4.0 + 8.0 * i / 8000.0;
    DriveConfig dd = d;
    dd.delta2 = x;
    const double v = std::abs(general_coherences(sys, dd).d32.imag());
    if (v > best_f) {
      best_f = v;
      best = x;
    }
  }
  // Dressed resonances at (delta1 +- sqrt(delta1^2 + 4 |O31|^2)) / 2 =
  // 1 +- sqrt(2); the narrow component dominates.
  const double lower = 1.0 - std::sqrt(2.0);
  CHECK(std::abs(best - lower) < 5e-3);

  // The component tracking the control detuning sits near 1 + sqrt(2).
  double best_hi = 0.0, best_hi_f = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = 1.0 + 3.0 * i / 4000.0;
    DriveConfig dd = d;
    dd.delta2 = x;
    const double v = std::abs(general_coherences(sys, dd).d32.imag());
    if (v > best_hi_f) {
      best_hi_f = v;
      best_hi = x;
    }
  }
  CHECK(std::abs(best_hi - (1.0 + std::sqrt(2.0))) < 2e-2);
}

TEST_CASE("degenerate denominators are reported") {
  LevelSystem sys;
  sys.gamma3 = 0.0;
  DriveConfig d;
  d.omega31_mag = 0.0;
  CHECK_THROWS_AS(general_coherences(sys, d), DegenerateDenominator);
}

TEST_CASE("strong-field absorptive pattern follows the trapped population") {
  LevelSystem sys;
  DriveConfig d = presets::closed_loop();
  d.omega31_mag = 1e3;
  DriveConfig at21 = d;
  at21.delta3 = 1e3;  // dressed extremum
  DriveConfig at32 = d;
  at32.delta2 = 1e3;
  CHECK(general_coherences(sys, at21).d21.imag() < 0.0);  // magnetic amplifies
  CHECK(general_coherences(sys, at32).d32.imag() > 0.0);  // electric absorbs
}
