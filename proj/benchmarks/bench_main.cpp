#include <benchmark/benchmark.h>

#include "loopresp/analytic.hpp"
#include "loopresp/floquet.hpp"
#include "loopresp/scan.hpp"
#include "loopresp/timedomain.hpp"

using namespace loopresp;

namespace {

DriveConfig bench_drive() {
  DriveConfig d = presets::closed_loop();
  d.delta1 = 0.4;
  d.delta2 = -0.7;
  d.delta3 = 1.1;
  return d;
}

void BM_BuildGenerator(benchmark::State& state) {
  const LevelSystem sys;
  const DriveConfig d = bench_drive();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_generator(sys, d, Mode::closed_loop));
  }
}
BENCHMARK(BM_BuildGenerator);

void BM_SolveHarmonics(benchmark::State& state) {
  const LevelSystem sys;
  const DriveConfig d = bench_drive();
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_harmonics(gen, d.omega21(), std::conj(d.omega21())));
  }
}
BENCHMARK(BM_SolveHarmonics);

void BM_ExtractCoefficients(benchmark::State& state) {
  const LevelSystem sys;
  const DriveConfig d = bench_drive();
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_coefficients(sys, d, Mode::closed_loop));
  }
}
BENCHMARK(BM_ExtractCoefficients);

void BM_AnalyticGeneral(benchmark::State& state) {
  const LevelSystem sys;
  const DriveConfig d = bench_drive();
  for (auto _ : state) {
    benchmark::DoNotOptimize(general_coherences(sys, d));
  }
}
BENCHMARK(BM_AnalyticGeneral);

void BM_RunPoint(benchmark::State& state) {
  const LevelSystem sys;
  const DriveConfig d = bench_drive();
  const MediumParams med;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_point(sys, d, med, Mode::closed_loop));
  }
}
BENCHMARK(BM_RunPoint);

void BM_IntegrateShort(benchmark::State& state) {
  LevelSystem sys;
  sys.gamma3 = 0.1;
  DriveConfig d = bench_drive();
  d.omega32_mag = 1e-4;
  d.omega21_mag = 1e-4;
  const HarmonicGenerator gen = build_generator(sys, d, Mode::closed_loop);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(gen, DensityVector::ground(), 50.0, 1e-8));
  }
}
BENCHMARK(BM_IntegrateShort);

}  // namespace

BENCHMARK_MAIN();
