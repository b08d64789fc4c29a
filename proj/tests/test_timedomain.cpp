#include <doctest.h>

#include <numbers>
#include <sstream>

#include "loopresp/analytic.hpp"
#include "loopresp/floquet.hpp"
#include "loopresp/timedomain.hpp"

using namespace loopresp;

TEST_CASE("free decay empties |2> at rate gamma3") {
  LevelSystem sys;
  sys.gamma3 = 0.1;
  DriveConfig off;
  off.omega31_mag = off.omega32_mag = off.omega21_mag = 0.0;
  const HarmonicGenerator gen = build_generator(sys, off, Mode::closed_loop);
  const IntegrationResult run =
      integrate(gen, DensityVector::from_populations(0.0, 1.0), 30.0, 1e-10);

  const double p22 = run.window_states.back()[kRho22].real();
  const double fitted = -std::log(p22) / 30.0;
  CHECK(fitted == doctest::Approx(sys.gamma3).epsilon(0.01));
  const double p11 = run.window_states.back()[kRho11].real();
  CHECK(p11 == doctest::Approx(1.0 - p22).epsilon(1e-9));
  CHECK(run.max_population_imag < 1e-9);
  CHECK(run.max_hermiticity_defect < 1e-9);
}

TEST_CASE("incoherent endpoint matches the closed-form populations") {
  LevelSystem sys;
  DriveConfig pump = presets::incoherent_pump();
  pump.omega32_mag = 0.0;
  pump.omega21_mag = 0.0;
  const HarmonicGenerator gen = build_generator(sys, pump, Mode::incoherent);
  const IntegrationResult run = integrate(gen, DensityVector::ground(), 200.0, 1e-10);
  const Populations want = incoherent_populations(sys, pump.r1);
  CHECK(run.window_states.back()[kRho11].real() == doctest::Approx(want.rho11).epsilon(1e-6));
  CHECK(run.window_states.back()[kRho22].real() == doctest::Approx(want.rho22).epsilon(1e-6));
}

TEST_CASE("resonant endpoint is a fixed point of the generator") {
  LevelSystem sys;
  sys.gamma3 = 0.1;
  DriveConfig d = presets::closed_loop();
  d.omega32_mag = 1e-4;
  d.omega21_mag = 1e-4;  // Delta = 0: static drive
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  const IntegrationResult run = integrate(gen, DensityVector::ground(), 300.0, 1e-10);
  DensityVector end;
  end.entries = run.window_states.back();
  CHECK(rhs(300.0, end, gen).entries.norm() < 1e-8);
}

TEST_CASE("projection round-trips a synthesized Floquet trajectory") {
  LevelSystem sys;
  sys.gamma3 = 0.08;
  DriveConfig d = presets::closed_loop();
  d.omega32_mag = 1e-4;
  d.omega21_mag = 2e-4;
  d.delta1 = -0.1;
  d.delta2 = 0.2;
  d.delta3 = 0.3;  // Delta = 0.6
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  const FloquetSolution sol =
      solve_harmonics(gen, d.omega21(), std::conj(d.omega21()));

  const double period = 2.0 * std::numbers::pi / std::abs(gen.delta);
  const int n = 2048;
  std::vector<double> times(n + 1);
  std::vector<Vec8> states(n + 1);
  for (int i = 0; i <= n; ++i) {
    times[i] = 4.0 * period * i / n;
    states[i] = sol.at_time(times[i]);
  }
  const HarmonicProjection proj = project_samples(times, states, gen.delta);
  CHECK((proj.r0 - sol.r0.entries).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((proj.r_plus - Vec8(sol.r_plus * sol.omega21)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((proj.r_minus - Vec8(sol.r_minus * sol.omega12)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("time-domain projection matches the harmonic solve") {
  LevelSystem sys;
  sys.gamma3 = 0.1;
  DriveConfig d = presets::closed_loop();
  d.omega32_mag = 1e-4;
  d.omega21_mag = 1e-4;
  d.delta1 = 0.0;
  d.delta2 = 0.25;
  d.delta3 = 0.25;  // Delta = 0.5
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  const FloquetSolution sol = solve_harmonics(gen, d.omega21(), std::conj(d.omega21()));
  const IntegrationResult run = integrate(gen, DensityVector::ground(), 400.0, 1e-10);
  const HarmonicProjection proj = project_harmonics(run, gen.delta);

  CHECK((proj.r0 - sol.r0.entries).cwiseAbs().maxCoeff() /
            sol.r0.entries.cwiseAbs().maxCoeff() <
        1e-5);
  const Vec8 want_p = sol.r_plus * sol.omega21;
  CHECK((proj.r_plus - want_p).cwiseAbs().maxCoeff() / want_p.cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("projection demands two beat periods") {
  LevelSystem sys;
  sys.gamma3 = 0.2;
  DriveConfig d = presets::closed_loop();
  d.delta2 = 0.05;
  d.delta3 = 0.05;  // Delta = 0.1, period ~ 63
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  const IntegrationResult run = integrate(gen, DensityVector::ground(), 30.0, 1e-8);
  CHECK_THROWS_AS(project_harmonics(run, gen.delta), WindowTooShort);
}

TEST_CASE("static projection degenerates to the endpoint") {
  LevelSystem sys;
  sys.gamma3 = 0.1;
  DriveConfig d = presets::closed_loop();  // Delta = 0
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  const IntegrationResult run = integrate(gen, DensityVector::ground(), 150.0, 1e-10);
  const HarmonicProjection proj = project_harmonics(run, gen.delta);
  CHECK((proj.r0 - run.window_states.back()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(proj.r_plus.isZero(0.0));
}

TEST_CASE("settling-time helper uses the slowest nonzero rate") {
  LevelSystem sys;
  sys.gamma3 = 0.05;
  CHECK(suggest_settling_time(sys, presets::closed_loop()) == doctest::Approx(200.0));
  LevelSystem fast;
  fast.gamma3 = 2.0;
  CHECK(suggest_settling_time(fast, presets::closed_loop()) == doctest::Approx(10.0));
}

TEST_CASE("trajectory dump is well-formed CSV") {
  LevelSystem sys;
  sys.gamma3 = 0.5;
  DriveConfig off;
  off.omega31_mag = off.omega32_mag = off.omega21_mag = 0.0;
  const HarmonicGenerator gen = build_generator(sys, off, Mode::closed_loop);
  const IntegrationResult run =
      integrate(gen, DensityVector::from_populations(0.2, 0.8), 5.0, 1e-8);
  std::ostringstream out;
  write_trajectory_csv(out, run);
  const std::string text = out.str();
  CHECK(text.find("t,rho11_re,rho11_im") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(run.times.size()) + 1);
}
