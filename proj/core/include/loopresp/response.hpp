#pragma once

#include "loopresp/floquet.hpp"
#include "loopresp/model.hpp"
#include "loopresp/types.hpp"

namespace loopresp {

// Macroscopic linear response at the probe frequency, in natural units
// (probe amplitudes E_p = B_p = 1, remaining prefactors folded into the
// particle density).
struct ResponseSet {
  Complex chi_e{0.0};
  Complex chi_m{0.0};
  Complex xi_he{0.0};
  Complex xi_eh{0.0};
  Complex n{1.0};
  Complex m1{0.0};  // cross magnetization contribution (resonant branch only)
  Complex m2{0.0};  // direct magnetization contribution
  double enhancement = 0.0;  // |m1| / |m2|
  bool enhancement_infinite = false;
  Branch branch = Branch::detuned;
};

// n = sqrt(eps*mu - (xi_eh + xi_he)^2 / 4) + (i/2)(xi_eh - xi_he) with
// eps = chi_e + 1, mu = chi_m + 1. The square root branch is chosen with
// non-negative imaginary part (passive medium); gain_branch flips it.
Complex refractive_index(Complex chi_e, Complex chi_m, Complex xi_eh, Complex xi_he,
                         bool gain_branch = false);

// Assembles susceptibilities, chiralities, refractive index and the two
// magnetization contributions from one coefficient extraction.
//
// Phase bookkeeping: the cross coefficients carry the control phase e^{i psi}
// through their Omega31 factor; assemble() strips it and applies the loop
// phase psi - 2 phi + K.r explicitly, with opposite signs on the two
// chiralities (mirroring the e^{+-i Phi} dipole-phase prefactors), so that
// arg(xi_HE) shifts by +(dpsi - 2 dphi) and arg(xi_EH) by the opposite.
ResponseSet assemble(const ExpansionCoefficients& coeffs, const MediumParams& medium,
                     const DriveConfig& drive, bool gain_branch = false);

}  // namespace loopresp
