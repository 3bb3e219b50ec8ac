#pragma once

#include <functional>
#include <vector>

#include "ovm/measurable.hpp"
#include "ovm/normed.hpp"
#include "ovm/vector_measure.hpp"

namespace ovm {

/// An atomic operator measure μ: Σ → ℂ^{d×d} with μ(E) = Σ_{ω∈E} K_ω.
/// `normalized` records that μ(Ω) = I was asserted and verified; constructors
/// that cannot guarantee it leave the flag false rather than reject, since
/// natural examples (truncated series) violate normalization.
struct OperatorMeasure {
  Eigen::Index dim = 0;
  SpacePtr measurable;
  std::vector<Mat> atom_operators;
  bool normalized = false;
  double tail_norm_bound = 0.0;

  static OperatorMeasure make(Eigen::Index dim, SpacePtr measurable,
                              std::vector<Mat> atom_operators, bool assert_normalized = false,
                              double tail_norm_bound = 0.0);

  Mat measure_of(const MeasurableSet& E) const;
};

/// The family {μ_{Λ,x}} stored through kernel matrices:
/// μ_{Λ,x}({ω}) = Λ(K_ω x). Bilinearity in (Λ, x) is structural.
struct OperatorProjectionFamily {
  Eigen::Index dim = 0;
  SpacePtr measurable;
  std::vector<Mat> kernel;
  double tail_norm_bound = 0.0;

  static OperatorProjectionFamily make(Eigen::Index dim, SpacePtr measurable,
                                       std::vector<Mat> kernel, double tail_norm_bound = 0.0);
};

OperatorProjectionFamily operator_family_of(const OperatorMeasure& mu);

/// μ(x): the vector projection family with kernels K_ω x, living on (ℂ^d, ℓ²).
VectorProjectionFamily slice_by_vector(const OperatorProjectionFamily& fam, const Vec& x);

/// Λ(μ): the family indexed by x ∈ X, i.e. a vector projection family over
/// the dual space with kernels K_ωᵀ Λ (the Banach adjoint under the bilinear
/// pairing), so that projecting it at x reproduces μ_{Λ,x}.
VectorProjectionFamily slice_by_functional(const OperatorProjectionFamily& fam,
                                           const Functional& L);

/// ∫f dμ as the matrix M = Σ_ω f(ω) K_ω, characterized by
/// Λ(Mx) = ∫f dμ_{Λ,x} for every Λ, x. The operator-on-X, bilinear-form and
/// operator-on-X* readings of the integral are all views of this matrix.
Mat integrate_operator(const MeasurableFunction& f, const OperatorProjectionFamily& fam);

/// A resolution of the identity with finitely many spectral atoms: clustered
/// eigenvalues λ_j with mutually orthogonal self-adjoint projections P_j
/// summing to the identity. The support space carries atoms "l0", "l1", ...
/// ordered by ascending (Re, Im) of λ_j, labeled with λ_j.
struct SpectralMeasure {
  Eigen::Index dim = 0;
  SpacePtr support;
  std::vector<cplx> eigenvalues;
  std::vector<Mat> projections;

  /// E(A) = Σ_{j∈A} P_j.
  Mat measure_of(const MeasurableSet& A) const;

  OperatorMeasure as_operator_measure() const;
};

/// Spectral decomposition of a normal matrix: eigenvalues within
/// cluster_tol are merged into one atom whose projection spans their joint
/// eigenspace. cluster_tol ≤ 0 selects the default 1e-8·‖T‖ (kept above a
/// floor of 1e-14·‖T‖ either way).
///
/// Throws normality_error when ‖TT† − T†T‖ > 1e-10·‖T‖².
SpectralMeasure spectral_measure_of(const Mat& T, double cluster_tol = -1.0);

/// Cluster assembly from an explicit eigensystem (unitary columns). The
/// result is independent of the column order: projections depend only on the
/// clustered eigenspaces. Exposed so that order-invariance is testable.
SpectralMeasure spectral_from_eigensystem(const std::vector<cplx>& eigenvalues, const Mat& U,
                                          double cluster_tol);

/// f(T) = Σ_j f(λ_j) P_j with f evaluated at the spectral support labels.
Mat functional_calculus(const MeasurableFunction& f, const Mat& T, double cluster_tol = -1.0);

/// Same, with a plain callable on the eigenvalues.
Mat functional_calculus(const std::function<cplx(cplx)>& f, const Mat& T,
                        double cluster_tol = -1.0);

/// ‖(∫f dE)(∫g dE) − ∫fg dE‖_F; small for every valid spectral measure.
double check_multiplicative(const SpectralMeasure& E, const MeasurableFunction& f,
                            const MeasurableFunction& g);

/// Σ_i (∫f dμ_{x,e_i}) e_i, where μ_{x,y}(A) = ⟨μ(A)x, y⟩ is the Hilbert
/// pairing (conjugate-linear in y). Equals (∫f dμ)·x for any complete
/// orthonormal basis.
Vec basis_reconstruction(const OperatorProjectionFamily& fam, const MeasurableFunction& f,
                         const Vec& x, const std::vector<Vec>& basis);

/// μ(E) = Σ_{n=1}^N 2^{-n} λ_n(E) T_n for probability measures λ_n and
/// operators of unit spectral norm; truncation certified by 2^{-N}.
OperatorMeasure series_operator_measure(const std::vector<ComplexMeasure>& lams,
                                        const std::vector<Mat>& Ts);

}  // namespace ovm
