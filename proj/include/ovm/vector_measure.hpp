#pragma once

#include <vector>

#include "ovm/measurable.hpp"
#include "ovm/normed.hpp"

namespace ovm {

/// An atomic vector measure μ: Σ → ℂ^d. σ-additivity is structural:
/// μ(E) = Σ_{ω∈E} atom_vectors[ω].
///
/// tail_norm_bound certifies the total norm Σ‖·‖ of mass not represented in
/// atom_vectors (omitted atoms, and any truncation performed by a
/// constructor); it bounds ‖∫f dμ − computed‖ by sup|f| · tail_norm_bound
/// for any tail-bounded f.
struct VectorMeasure {
  SpaceDescriptor space;
  SpacePtr measurable;
  std::vector<Vec> atom_vectors;
  double tail_norm_bound = 0.0;

  static VectorMeasure make(SpaceDescriptor space, SpacePtr measurable,
                            std::vector<Vec> atom_vectors, double tail_norm_bound = 0.0);
};

/// A family of scalar measures {μ_Λ | Λ ∈ X*} stored through its kernel:
/// one vector k_ω per atom with μ_Λ({ω}) = Λ(k_ω). Linearity of Λ ↦ μ_Λ and
/// norm-continuity hold by construction.
struct VectorProjectionFamily {
  SpaceDescriptor space;
  SpacePtr measurable;
  std::vector<Vec> kernel;
  double tail_norm_bound = 0.0;

  static VectorProjectionFamily make(SpaceDescriptor space, SpacePtr measurable,
                                     std::vector<Vec> kernel, double tail_norm_bound = 0.0);
};

/// μ(E) = Σ_{ω∈E} atom_vectors.
Vec measure_of_vector(const VectorMeasure& mu, const MeasurableSet& E);

/// The projection family generated by a vector measure: k_ω = μ({ω}), so
/// that project(family_of(μ), Λ)(E) = Λ(μ(E)) for every Λ and E.
VectorProjectionFamily family_of(const VectorMeasure& mu);

/// μ_Λ with weights Λ(k_ω); linear in Λ. The projected tail bound is
/// ‖Λ‖ · tail_norm_bound.
ComplexMeasure project(const VectorProjectionFamily& fam, const Functional& L);

/// The integral ∫f dμ as the vector Σ_ω f(ω) k_ω, characterized by
/// pair(Λ, result) = integrate_scalar(f, project(fam, Λ)) for every Λ.
/// In this reflexive setting the second-dual element always lies in the
/// original space, so the result is a plain vector.
Vec integrate_vector(const MeasurableFunction& f, const VectorProjectionFamily& fam);

/// E is null iff μ_Λ(E) = 0 for every Λ — for kernels, iff k_ω = 0 on E.
bool is_null(const VectorProjectionFamily& fam, const MeasurableSet& E);

/// Brackets |μ|_SV(A) = sup_{‖Λ‖≤1} |μ_Λ|_TV(A).
BoundPair semivariation(const VectorProjectionFamily& fam, const MeasurableSet& A,
                        const SupBudget& budget = {});

/// μ^g(E) = ∫_E g dμ, as the measure with atoms g(ω) k_ω.
VectorMeasure weighted_measure(const MeasurableFunction& g, const VectorProjectionFamily& fam);

/// μ(E) = Σ_{n=1}^N 2^{-n} λ_n(E) x_n for probability measures λ_n on a
/// common space and unit vectors x_n. The dropped terms are certified by
/// tail_norm_bound = 2^{-N} (plus any λ_n truncation tails).
VectorMeasure series_vector_measure(const std::vector<ComplexMeasure>& lams,
                                    const std::vector<Vec>& xs, const SpaceDescriptor& space);

}  // namespace ovm
