#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ovm/types.hpp"

namespace ovm {

enum class Norm { L1, L2, Linf };

Norm dual_norm_of(Norm n);
std::string norm_tag(Norm n);      // "l1" | "l2" | "linf"
Norm norm_from_tag(const std::string& tag);

/// A finite-dimensional complex space ℂ^d carrying one of the ℓ¹, ℓ², ℓ^∞
/// norms. The dual is ℂ^d with the conjugate-exponent norm and the pairing is
/// bilinear; the space is reflexive, so the second dual is the space itself
/// under the same coordinates.
struct SpaceDescriptor {
  Eigen::Index dim = 0;
  Norm norm = Norm::L2;

  SpaceDescriptor dual() const { return {dim, dual_norm_of(norm)}; }
  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

double vector_norm(const Vec& v, Norm n);

/// A functional Λ acting by the bilinear pairing Λ(x) = Σ_k c_k x_k.
/// No conjugation: this is Banach-space duality, not the Hilbert inner
/// product (which lives with the operator/quantum modules).
struct Functional {
  Vec coeffs;
};

/// Σ_k c_k x_k. |pair| ≤ dual_norm(L) · norm(x) (Hölder).
cplx pair(const Functional& L, const Vec& x);

/// Norm of the functional = dual-exponent norm of its coefficients.
double functional_norm(const Functional& L, const SpaceDescriptor& space);

/// Functionals of dual norm ≤ 1, deterministic given the seed. When the dual
/// ball is a polytope (ℓ¹/ℓ^∞ duals) the sample starts with its extreme
/// points under phase quantization — all of them when that set is small
/// enough to enumerate, otherwise a random selection — followed by `count`
/// uniformly random directions.
std::vector<Functional> dual_ball_sample(const SpaceDescriptor& space, int count,
                                         std::uint64_t seed, int phase_count = 8);

/// Certified interval for a quantity defined as a supremum.
struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
};

/// Effort knobs for abs_sum_dual_sup.
struct SupBudget {
  int sample_count = 64;       // random dual directions evaluated
  int ascent_starts = 8;       // best sampled starts refined by ascent
  int ascent_iters = 50;
  double ascent_rel_tol = 1e-12;
  int subset_limit = 20;       // max m for the 2^m subset enumeration
  int phase_count = 8;
  std::uint64_t seed = 0x5eedULL;
};

/// Brackets sup over the dual unit ball of Σ_ω |Λ(v_ω)| — the semivariation
/// of the atomic vector measure with atom vectors V.
///
/// lower: best sampled value improved by phase-alignment ascent (align each
/// Λ(v_ω) to the positive real axis, then re-maximize Λ against the aligned
/// sum; each step is monotone non-decreasing).
/// upper: min of the termwise Hölder bound Σ‖v_ω‖ and, for m ≤ subset_limit,
/// 4·max_{F⊆{1..m}} ‖Σ_{ω∈F} v_ω‖.
BoundPair abs_sum_dual_sup(const std::vector<Vec>& V, const SpaceDescriptor& space,
                           const SupBudget& budget = {});

}  // namespace ovm
