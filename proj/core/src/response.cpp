#include "loopresp/response.hpp"

#include <cmath>
#include <limits>

namespace loopresp {

Complex refractive_index(Complex chi_e, Complex chi_m, Complex xi_eh, Complex xi_he,
                         bool gain_branch) {
  const Complex eps = chi_e + 1.0;
  const Complex mu = chi_m + 1.0;
  const Complex sum = xi_eh + xi_he;
  Complex root = std::sqrt(eps * mu - 0.25 * sum * sum);
  if (!gain_branch) {
    if (root.imag() < 0.0) root = -root;
  } else {
    if (root.imag() > 0.0) root = -root;
  }
  return root + 0.5 * kI * (xi_eh - xi_he);
}

ResponseSet assemble(const ExpansionCoefficients& coeffs, const MediumParams& medium,
                     const DriveConfig& drive, bool gain_branch) {
  ResponseSet out;
  out.branch = coeffs.branch;

  const double kappa = medium.density_N;
  const double d32 = medium.d32;
  const double mu21 = medium.mu21;

  out.chi_e = kappa * d32 * d32 * coeffs.d32;
  out.chi_m = kappa * mu21 * mu21 * coeffs.d21;

  if (coeffs.branch == Branch::resonant) {
    const double loop = drive.psi - 2.0 * drive.phi + drive.k_mismatch_phase;
    // Cross coefficients carry e^{i psi} via their Omega31 factor; strip it
    // before applying the explicit loop-phase prefactors.
    const Complex c21 = coeffs.c21 * std::polar(1.0, -drive.psi);
    const Complex c32 = coeffs.c32 * std::polar(1.0, -drive.psi);
    const Complex he_phase = std::polar(1.0, medium.Phi + loop);
    const Complex eh_phase = std::polar(1.0, -medium.Phi - loop);
    out.xi_he = -kI * kappa * d32 * mu21 * he_phase * c21;
    out.xi_eh = kI * kappa * d32 * mu21 * eh_phase * c32;
    out.m1 = d32 * mu21 * he_phase * c21;  // E_p = 1
  } else {
    out.xi_he = 0.0;
    out.xi_eh = 0.0;
    out.m1 = 0.0;
  }
  out.m2 = mu21 * mu21 * coeffs.d21;  // B_p = 1

  const double m2_mag = std::abs(out.m2);
  if (m2_mag == 0.0) {
    out.enhancement_infinite = std::abs(out.m1) > 0.0;
    out.enhancement = out.enhancement_infinite
                          ? std::numeric_limits<double>::infinity()
                          : 0.0;
  } else {
    out.enhancement = std::abs(out.m1) / m2_mag;
  }

  out.n = refractive_index(out.chi_e, out.chi_m, out.xi_eh, out.xi_he, gain_branch);
  return out;
}

}  // namespace loopresp
