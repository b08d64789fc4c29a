#include "loopresp/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loopresp {

namespace {

double norm1(const Mat8& a) {
  double best = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double s = a.col(j).cwiseAbs().sum();
    if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    best = std::max(best, s);
  }
  return best;
}

// Solves a x = b with a condition guard and relative residual report.
Vec8 guarded_solve(const Mat8& a, const Vec8& b, double* residual) {
  const Eigen::PartialPivLU<Mat8> lu(a);
  const Mat8 inv = lu.inverse();
  const double cond = norm1(a) * norm1(inv);
  if (!std::isfinite(cond) || cond > kConditionLimit) {
    throw SingularGenerator(cond);
  }
  Vec8 x = lu.solve(b);
  const double bnorm = b.norm();
  const double res = (a * x - b).norm() / (bnorm > 0 ? bnorm : 1.0);
  *residual = std::max(*residual, res);
  return x;
}

}  // namespace

double condition_estimate(const Mat8& a) {
  const Eigen::PartialPivLU<Mat8> lu(a);
  return norm1(a) * norm1(lu.inverse());
}

FloquetSolution solve_harmonics(const HarmonicGenerator& gen, Complex omega21,
                                Complex omega12) {
  FloquetSolution sol;
  sol.delta = gen.delta;
  sol.omega21 = omega21;
  sol.omega12 = omega12;

  const Mat8 id = Mat8::Identity();
  sol.r0.entries = guarded_solve(gen.m0, Vec8(-gen.sigma0), &sol.residual);
  sol.r_plus = guarded_solve(gen.m0 - kI * gen.delta * id,
                             Vec8(-(gen.m_plus * sol.r0.entries + gen.sigma_plus)),
                             &sol.residual);
  sol.r_minus = guarded_solve(gen.m0 + kI * gen.delta * id,
                              Vec8(-(gen.m_minus * sol.r0.entries + gen.sigma_minus)),
                              &sol.residual);
  return sol;
}

namespace {

// Relative eps-halving gap with a floor for coefficients that vanish.
double pair_gap(Complex v1, Complex v2) {
  const double scale = std::max(std::abs(v1), std::abs(v2));
  if (scale < 1e-12) return 0.0;
  return std::abs(v1 - v2) / scale;
}

}  // namespace

RawCoefficients extract_raw_coefficients(const LevelSystem& system, const DriveConfig& drive,
                                         Mode mode, double eps) {
  RawCoefficients out;

  // Direct magnetic and cross electric coefficients are the harmonic
  // amplitudes themselves, evaluated with the electric probe off (their
  // Omega32 dependence is of higher order in the probe).
  DriveConfig d0 = drive;
  d0.omega32_mag = 0.0;
  const FloquetSolution base =
      solve_harmonics(build_generator(system, d0, mode), d0.omega21(), std::conj(d0.omega21()));
  out.d21 = base.r_plus[kRho21];
  out.c32 = base.r_minus[kRho32];

  // Omega32-direction coefficients by two-point differencing. The leading
  // correction is even in the probe, so the eps/(eps/2) pair combines to a
  // fourth-order-accurate value.
  const auto probe = [&](double e) {
    DriveConfig dp = drive;
    dp.omega32_mag = e;
    const FloquetSolution s =
        solve_harmonics(build_generator(system, dp, mode), dp.omega21(), std::conj(dp.omega21()));
    const Complex o32 = dp.omega32();
    return std::pair<Complex, Complex>{s.r0.entries[kRho32] / o32,
                                       s.r0.entries[kRho21] / std::conj(o32)};
  };
  const auto [a1, b1] = probe(eps);
  const auto [a2, b2] = probe(0.5 * eps);

  out.linearity_gap = std::max(pair_gap(a1, a2), pair_gap(b1, b2));
  if (out.linearity_gap > kLinearityTol) {
    throw LinearityFailure(out.linearity_gap);
  }
  out.d32 = (4.0 * a2 - a1) / 3.0;
  out.c21 = (4.0 * b2 - b1) / 3.0;
  return out;
}

ExpansionCoefficients extract_coefficients(const LevelSystem& system, const DriveConfig& drive,
                                           Mode mode) {
  const RawCoefficients raw = extract_raw_coefficients(system, drive, mode);
  const double delta = (mode == Mode::incoherent)
                           ? drive.delta2 + drive.delta3
                           : drive.multiphoton_detuning();

  ExpansionCoefficients out;
  out.d21 = raw.d21;
  out.d32 = raw.d32;
  out.linearity_gap = raw.linearity_gap;
  if (std::abs(delta) <= kResonanceTol) {
    out.branch = Branch::resonant;
    out.c21 = raw.c21;
    out.c32 = raw.c32;
  } else {
    out.branch = Branch::detuned;
    out.c21 = 0.0;
    out.c32 = 0.0;
  }
  return out;
}

}  // namespace loopresp
