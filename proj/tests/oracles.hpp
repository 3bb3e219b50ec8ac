#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ovm/types.hpp"

namespace oracles {

using ovm::cplx;
using ovm::Mat;
using ovm::Vec;

/// Brute-force value of sup_{‖Λ‖₂≤1} Σ_ω |Λ(v_ω)| for m ≤ 3 vectors.
///
/// The supremum over the ℓ² ball reduces exactly to a maximization over the
/// relative phases of the atoms: sup_Λ Σ|Λ(v_ω)| = sup_φ ‖Σ e^{iφ_ω} v_ω‖₂,
/// with one phase fixed by symmetry and the last eliminated in closed form
/// (max_{|c|=1} ‖w + c v‖² = ‖w‖² + ‖v‖² + 2|w†v|). The remaining free phase,
/// if any, is scanned on a grid fine enough for the requested error.
struct GridResult {
  double value = 0.0;
  double error = 0.0;  // value ≤ true sup ≤ value + error
};

inline double closed_form_last(const Vec& w, const Vec& v) {
  cplx overlap = w.adjoint() * v;
  return std::sqrt(w.squaredNorm() + v.squaredNorm() + 2.0 * std::abs(overlap));
}

inline GridResult l2_abs_sum_sup(const std::vector<Vec>& V, double target_err = 2e-4) {
  GridResult res;
  if (V.empty()) return res;
  if (V.size() == 1) {
    res.value = V[0].norm();
    return res;
  }
  if (V.size() == 2) {
    res.value = closed_form_last(V[0], V[1]);
    return res;
  }
  // m == 3: scan φ for v1 + e^{iφ} v2, close the third phase analytically.
  // The scanned function is Lipschitz in φ with constant ‖v2‖.
  double lip = V[1].norm();
  double step = lip > 0.0 ? target_err / lip : 1.0;
  long points = static_cast<long>(std::ceil(2.0 * std::numbers::pi / step)) + 1;
  double best = 0.0;
  for (long k = 0; k < points; ++k) {
    double phi = 2.0 * std::numbers::pi * k / points;
    Vec w = V[0] + cplx(std::cos(phi), std::sin(phi)) * V[1];
    best = std::max(best, closed_form_last(w, V[2]));
  }
  res.value = best;
  res.error = lip * (2.0 * std::numbers::pi / points) / 2.0;
  return res;
}

/// Plain elementwise sum Σ f_i w_i, kept separate from the library path.
inline cplx naive_weighted_sum(const std::vector<cplx>& values, const std::vector<cplx>& weights) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * weights[i];
  return acc;
}

/// Matrix exponential by direct series summation.
inline Mat exp_series(const Mat& m, int terms = 40) {
  Mat acc = Mat::Identity(m.rows(), m.cols());
  Mat power = Mat::Identity(m.rows(), m.cols());
  double factorial = 1.0;
  for (int k = 1; k <= terms; ++k) {
    power = power * m;
    factorial *= k;
    acc += power / factorial;
  }
  return acc;
}

}  // namespace oracles
