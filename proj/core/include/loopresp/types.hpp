#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace loopresp {

using Complex = std::complex<double>;
using Vec8 = Eigen::Matrix<Complex, 8, 1>;
using Mat8 = Eigen::Matrix<Complex, 8, 8>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kFineStructure = 1.0 / 137.035999;

// Component order of the density-matrix vector; rho33 is eliminated via the
// trace and reconstructed on demand.
enum Component : int {
  kRho11 = 0,
  kRho12 = 1,
  kRho13 = 2,
  kRho21 = 3,
  kRho22 = 4,
  kRho23 = 5,
  kRho31 = 6,
  kRho32 = 7,
};

// Index of the conjugate component: entry i of a Hermitian state equals
// conj(entry conjugate_index[i]).
inline constexpr std::array<int, 8> kConjugateIndex{0, 3, 6, 1, 4, 7, 2, 5};

struct DensityVector {
  Vec8 entries = Vec8::Zero();

  static DensityVector ground() {
    DensityVector v;
    v.entries[kRho11] = 1.0;
    return v;
  }

  static DensityVector from_populations(double rho11, double rho22) {
    DensityVector v;
    v.entries[kRho11] = rho11;
    v.entries[kRho22] = rho22;
    return v;
  }

  Complex rho33() const {
    return 1.0 - entries[kRho11] - entries[kRho22];
  }

  // max_i |v_i - conj(v_{pair(i)})|
  double hermiticity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      worst = std::max(worst,
                       std::abs(entries[i] - std::conj(entries[kConjugateIndex[i]])));
    }
    return worst;
  }

  bool is_physical(double tol = 1e-10) const {
    if (hermiticity_defect() > tol) return false;
    const double p1 = entries[kRho11].real();
    const double p2 = entries[kRho22].real();
    const double p3 = rho33().real();
    if (std::abs(entries[kRho11].imag()) > tol) return false;
    if (std::abs(entries[kRho22].imag()) > tol) return false;
    for (double p : {p1, p2, p3}) {
      if (p < -tol || p > 1.0 + tol) return false;
    }
    return true;
  }
};

}  // namespace loopresp
