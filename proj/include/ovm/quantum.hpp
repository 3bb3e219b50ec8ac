#pragma once

#include <string>
#include <vector>

#include "ovm/measurable.hpp"
#include "ovm/operator_measure.hpp"

namespace ovm {

/// A state: Hermitian PSD matrix. Not forced to unit trace; `normalized`
/// gates the probability interpretations.
struct DensityOperator {
  Mat matrix;
  double trace = 0.0;
  bool normalized = false;

  /// Validates Hermiticity (‖ρ−ρ†‖ ≤ 1e-10) and positivity (λ_min ≥ −1e-10).
  static DensityOperator from_matrix(Mat rho);
};

/// ρ_x = x x† under the Hilbert pairing ⟨a,b⟩ = b†a (conjugate-linear in the
/// second slot). Rank one, trace ‖x‖². Additive over orthogonal vectors.
DensityOperator pure_state(const Vec& x);

/// tr(Tρ); real whenever both are Hermitian. Realizes the trace dualities
/// between compact/self-adjoint operators and states.
cplx trace_pair(const Mat& T, const DensityOperator& rho);

/// A positive operator measure at desk scale: Hermitian PSD effects summing
/// to the identity.
struct POVM {
  SpacePtr measurable;
  std::vector<Mat> effects;

  static POVM make(SpacePtr measurable, std::vector<Mat> effects);
  Eigen::Index dim() const { return effects.empty() ? 0 : effects.front().rows(); }
  OperatorMeasure as_operator_measure() const;
};

/// Outcome distribution p_ω = tr(P_ω ρ); a probability measure for
/// normalized states.
ComplexMeasure povm_probabilities(const POVM& P, const DensityOperator& rho);

/// ∫f d𝒫 = Σ_ω f(ω) P_ω; PSD whenever f ≥ 0.
Mat povm_integrate(const MeasurableFunction& f, const POVM& P);

/// An operation measure realized per atom by Kraus families:
/// 𝓔(A)(ρ) = Σ_{ω∈A} Σ_k M_{ω,k} ρ M_{ω,k}†. Completely positive by
/// construction; `trace_preserving` is verified when asserted.
struct Instrument {
  SpacePtr measurable;
  std::vector<std::vector<Mat>> kraus;
  bool trace_preserving = false;

  static Instrument make(SpacePtr measurable, std::vector<std::vector<Mat>> kraus,
                         bool assert_trace_preserving = false);
  Eigen::Index dim() const;

  /// 𝓔({ω})(ρ).
  Mat apply_atom(std::size_t atom, const Mat& rho) const;
};

/// 𝓔(A)(ρ).
DensityOperator instrument_apply(const Instrument& E, const MeasurableSet& A,
                                 const DensityOperator& rho);

/// The measure A ↦ tr(T·𝓔(A)(ρ)), the projection of the operation measure
/// along (T, ρ).
ComplexMeasure operation_projection(const Instrument& E, const Mat& T,
                                    const DensityOperator& rho);

/// ∫f d𝓔 as a d²×d² superoperator on column-major vec(ρ):
/// Σ_ω f(ω) Σ_k conj(M_{ω,k}) ⊗ M_{ω,k}. Characterized by
/// tr(T·(∫f d𝓔)(ρ)) = ∫f d𝓔_{T,ρ}.
Mat operation_integrate(const MeasurableFunction& f, const Instrument& E);

Vec vectorize(const Mat& m);
Mat unvectorize(const Vec& v, Eigen::Index dim);

/// Escape hatch for operations given as a raw superoperator: applies S to ρ
/// and validates the output as a state.
DensityOperator apply_superoperator(const Mat& S, const DensityOperator& rho);

enum class ExtensionMode {
  /// Compare 𝓔(A)(ρ_{e_i}) against ρ_{𝒫(A)e_i}: the type-mismatched paper
  /// equation read through the pure-state injection x ↦ ρ_x.
  StateInjection,
  /// Compare expectation values tr(T·𝓔(A)(ρ_{e_i})) against
  /// tr(T·𝒫(A)ρ_{e_i}) over sampled Hermitian T.
  Expectation,
};

struct ExtensionReport {
  double max_residual = 0.0;
  std::vector<double> per_atom;  // max residual over basis elements, per atom
  bool pass = false;
  std::string mode;
};

/// Checks whether the instrument extends the POVM to mixed states over the
/// given orthonormal basis, per the selected reading of the extension
/// equation. Tolerance defaults to 1e-9.
ExtensionReport mixed_state_extension_check(const POVM& P, const Instrument& E,
                                            const std::vector<Vec>& basis, double tol = 1e-9,
                                            ExtensionMode mode = ExtensionMode::StateInjection,
                                            std::uint64_t seed = 17);

}  // namespace ovm
