#pragma once

// Shared random-instance generators for tests and the acceptance suite.

#include <vector>

#include "ovm/measurable.hpp"
#include "ovm/operator_measure.hpp"
#include "ovm/quantum.hpp"
#include "ovm/rng.hpp"
#include "ovm/vector_measure.hpp"

namespace gen {

using namespace ovm;

inline VectorMeasure random_vector_measure(Rng& rng, std::size_t atoms, int d, Norm norm) {
  SpacePtr space = AtomicSpace::indexed(atoms);
  std::vector<Vec> vectors(atoms);
  for (auto& v : vectors) v = rng.gaussian_vector(d);
  return VectorMeasure{{d, norm}, std::move(space), std::move(vectors), 0.0};
}

inline MeasurableFunction random_bounded_function(Rng& rng, std::size_t atoms) {
  std::vector<cplx> values(atoms);
  for (auto& v : values) v = std::sqrt(rng.uniform()) * rng.unit_phase();
  return MeasurableFunction::tabulated(std::move(values));
}

inline Functional random_dual_functional(Rng& rng, const SpaceDescriptor& space) {
  Vec g = rng.gaussian_vector(space.dim);
  double n = vector_norm(g, dual_norm_of(space.norm));
  if (n == 0.0) return Functional{Vec::Unit(space.dim, 0)};
  return Functional{g / n};
}

inline Mat random_normal_matrix(Rng& rng, int d, bool force_degenerate) {
  Vec diag(d);
  for (int i = 0; i < d; ++i) diag(i) = 2.0 * rng.cgaussian();
  if (force_degenerate && d > 1) {
    int copies = 1 + rng.uniform_int(d - 1);
    for (int c = 0; c < copies; ++c) diag(rng.uniform_int(d)) = diag(0);
  }
  Mat u = rng.random_unitary(d);
  return u * diag.asDiagonal() * u.adjoint();
}

inline DensityOperator random_state(Rng& rng, int d) {
  Mat g = rng.gaussian_matrix(d, d);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::from_matrix(((rho + rho.adjoint()) / 2.0).eval());
}

/// Random POVM: PSD pieces A_i whitened by S^{-1/2} so they sum to identity.
inline POVM random_povm(Rng& rng, std::size_t outcomes, int d) {
  std::vector<Mat> pieces(outcomes);
  Mat total = Mat::Zero(d, d);
  for (auto& p : pieces) {
    Mat g = rng.gaussian_matrix(d, d);
    p = g * g.adjoint();
    total += p;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(total);
  Mat whiten = es.operatorInverseSqrt();
  std::vector<Mat> effects(outcomes);
  for (std::size_t i = 0; i < outcomes; ++i) {
    Mat e = whiten * pieces[i] * whiten;
    effects[i] = ((e + e.adjoint()) / 2.0).eval();
  }
  return POVM::make(AtomicSpace::indexed(outcomes), std::move(effects));
}

/// Random trace-preserving instrument: Gaussian Kraus pieces whitened so
/// Σ M†M = I.
inline Instrument random_instrument(Rng& rng, std::size_t outcomes, int d,
                                    int kraus_per_outcome = 2) {
  std::vector<std::vector<Mat>> kraus(outcomes);
  Mat total = Mat::Zero(d, d);
  for (auto& family : kraus) {
    family.resize(kraus_per_outcome);
    for (auto& m : family) {
      m = rng.gaussian_matrix(d, d);
      total += m.adjoint() * m;
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(total);
  Mat whiten = es.operatorInverseSqrt();
  for (auto& family : kraus)
    for (auto& m : family) m = m * whiten;
  return Instrument::make(AtomicSpace::indexed(outcomes), std::move(kraus),
                          /*assert_trace_preserving=*/true);
}

/// Projective POVM {|b_i⟩⟨b_i|} and its Lüders instrument over the same
/// basis.
inline std::pair<POVM, Instrument> luders_pair(const std::vector<Vec>& basis) {
  std::vector<Mat> effects;
  std::vector<std::vector<Mat>> kraus;
  for (const auto& b : basis) {
    Mat p = b * b.adjoint();
    effects.push_back(p);
    kraus.push_back({p});
  }
  SpacePtr space = AtomicSpace::indexed(basis.size());
  return {POVM::make(space, std::move(effects)),
          Instrument::make(space, std::move(kraus), true)};
}

inline std::vector<Vec> unitary_columns(const Mat& u) {
  std::vector<Vec> cols;
  for (Eigen::Index j = 0; j < u.cols(); ++j) cols.push_back(u.col(j));
  return cols;
}

}  // namespace gen
