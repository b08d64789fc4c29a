#include "loopresp/timedomain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/numeric/odeint.hpp>

namespace loopresp {

namespace {

namespace ode = boost::numeric::odeint;

// odeint state: 8 complex components stored as 16 interleaved doubles, which
// keeps the error control purely real-valued.
using State = std::array<double, 16>;

Eigen::Map<const Vec8> as_vec(const State& s) {
  return Eigen::Map<const Vec8>(reinterpret_cast<const Complex*>(s.data()));
}

Eigen::Map<Vec8> as_vec(State& s) {
  return Eigen::Map<Vec8>(reinterpret_cast<Complex*>(s.data()));
}

constexpr double kMinStep = 1e-12;

}  // namespace

double suggest_settling_time(const LevelSystem& system, const DriveConfig& drive) {
  double slowest = std::numeric_limits<double>::infinity();
  for (double rate : {system.gamma1, system.gamma2, system.gamma3, drive.r1}) {
    if (rate > 0) slowest = std::min(slowest, rate);
  }
  if (!std::isfinite(slowest)) return 10.0;
  return 10.0 / slowest;
}

IntegrationResult integrate(const HarmonicGenerator& gen, const DensityVector& initial,
                            double t_end, double tol) {
  if (t_end <= 0) throw std::invalid_argument("integrate: t_end must be > 0");

  const Complex o21 = gen.omega21;
  const Complex o12 = std::conj(o21);
  const bool oscillating = (o21 != Complex{0.0});

  auto system_fn = [&](const State& y, State& dydt, double t) {
    const auto ym = as_vec(y);
    Vec8 r = gen.m0 * ym + gen.sigma0;
    if (oscillating) {
      const Complex up = o21 * std::exp(kI * gen.delta * t);
      const Complex dn = o12 * std::exp(-kI * gen.delta * t);
      r += up * (gen.m_plus * ym + gen.sigma_plus);
      r += dn * (gen.m_minus * ym + gen.sigma_minus);
    }
    as_vec(dydt) = r;
  };

  IntegrationResult result;

  // Trailing projection window: an integer number of beat periods when the
  // generator oscillates, otherwise the last tenth of the run.
  double window = 0.0;
  if (gen.delta != 0.0) {
    const double period = 2.0 * std::numbers::pi / std::abs(gen.delta);
    int periods = static_cast<int>(std::floor(0.3 * t_end / period));
    periods = std::min(periods, 64);
    window = periods > 0 ? periods * period : 0.0;
  } else {
    window = 0.1 * t_end;
  }
  result.window_begin = t_end - window;
  result.window_end = t_end;

  const int n_window = 4096;
  result.window_times.resize(n_window + 1);
  for (int i = 0; i <= n_window; ++i) {
    result.window_times[i] = result.window_begin + window * i / n_window;
  }
  result.window_states.resize(n_window + 1);

  State y;
  as_vec(y) = initial.entries;

  auto stepper = ode::make_dense_output(1e-14, tol, ode::runge_kutta_dopri5<State>());
  stepper.initialize(y, 0.0, std::min(1e-2, t_end));

  std::size_t next_sample = 0;
  std::size_t keep_stride = 1;
  std::size_t step_index = 0;

  auto record = [&](double t, const Vec8& v) {
    result.times.push_back(t);
    result.states.push_back(v);
    DensityVector dv;
    dv.entries = v;
    result.max_hermiticity_defect =
        std::max(result.max_hermiticity_defect, dv.hermiticity_defect());
    result.max_population_imag =
        std::max({result.max_population_imag, std::abs(v[kRho11].imag()),
                  std::abs(v[kRho22].imag())});
  };

  record(0.0, initial.entries);

  while (stepper.current_time() < t_end) {
    stepper.do_step(system_fn);
    if (stepper.current_time_step() < kMinStep) {
      throw StepFailure(stepper.current_time());
    }
    const double t_now = std::min(stepper.current_time(), t_end);

    if (++step_index % keep_stride == 0) {
      State tmp;
      stepper.calc_state(t_now, tmp);
      record(t_now, as_vec(tmp));
      if (result.times.size() > 16384) {
        // Thin the stored trajectory; invariants were already accumulated.
        std::vector<double> ts;
        std::vector<Vec8> ss;
        for (std::size_t i = 0; i < result.times.size(); i += 2) {
          ts.push_back(result.times[i]);
          ss.push_back(result.states[i]);
        }
        result.times.swap(ts);
        result.states.swap(ss);
        keep_stride *= 2;
      }
    }

    while (next_sample < result.window_times.size() &&
           result.window_times[next_sample] <= stepper.current_time()) {
      State tmp;
      stepper.calc_state(std::min(result.window_times[next_sample], t_end), tmp);
      result.window_states[next_sample] = as_vec(tmp);
      ++next_sample;
    }
  }
  for (; next_sample < result.window_times.size(); ++next_sample) {
    State tmp;
    stepper.calc_state(t_end, tmp);
    result.window_states[next_sample] = as_vec(tmp);
  }

  // Exact endpoint as the final trajectory entry.
  if (result.times.empty() || result.times.back() < t_end) {
    record(t_end, result.window_states.back());
  }
  result.transient_time = result.window_begin;
  return result;
}

HarmonicProjection project_samples(const std::vector<double>& times,
                                   const std::vector<Vec8>& states, double delta) {
  HarmonicProjection proj;
  if (times.empty() || states.size() != times.size()) {
    throw std::invalid_argument("project_samples: empty or mismatched samples");
  }
  const double span = times.back() - times.front();
  if (delta == 0.0 || span <= 0.0) {
    proj.r0 = states.back();
    return proj;
  }

  const std::size_t n = times.size();
  Vec8 acc0 = Vec8::Zero();
  Vec8 accp = Vec8::Zero();
  Vec8 accm = Vec8::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const Complex down = std::exp(-kI * delta * times[i]);
    acc0 += w * states[i];
    accp += (w * down) * states[i];
    accm += (w / down) * states[i];
  }
  const double h = span / static_cast<double>(n - 1);
  proj.r0 = acc0 * (h / span);
  proj.r_plus = accp * (h / span);
  proj.r_minus = accm * (h / span);
  return proj;
}

HarmonicProjection project_harmonics(const IntegrationResult& result, double delta) {
  if (delta != 0.0) {
    const double window = result.window_end - result.window_begin;
    if (std::abs(delta) * window < 4.0 * std::numbers::pi - 1e-9) {
      throw WindowTooShort();
    }
  }
  return project_samples(result.window_times, result.window_states, delta);
}

void write_trajectory_csv(std::ostream& out, const IntegrationResult& result) {
  out << "t";
  static const char* names[8] = {"rho11", "rho12", "rho13", "rho21",
                                 "rho22", "rho23", "rho31", "rho32"};
  for (const char* n : names) out << ',' << n << "_re," << n << "_im";
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", result.times[i]);
    out << buf;
    for (int c = 0; c < 8; ++c) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", result.states[i][c].real(),
                    result.states[i][c].imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace loopresp
