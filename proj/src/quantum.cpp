#include "ovm/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ovm/rng.hpp"

namespace ovm {

namespace {

double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void require_hermitian_psd(const Mat& m, const char* what) {
  if (frob_norm(m - m.adjoint()) > 1e-10)
    throw std::invalid_argument(std::string(what) + ": not Hermitian");
  if (min_eigenvalue(((m + m.adjoint()) / 2.0).eval()) < -1e-10)
    throw std::invalid_argument(std::string(what) + ": not positive semidefinite");
}

}  // namespace

DensityOperator DensityOperator::from_matrix(Mat rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("DensityOperator: square matrix required");
  require_hermitian_psd(rho, "DensityOperator");
  double tr = rho.trace().real();
  bool normalized = std::abs(tr - 1.0) <= 1e-10;
  return DensityOperator{std::move(rho), tr, normalized};
}

DensityOperator pure_state(const Vec& x) {
  if (x.size() == 0 || x.isZero(0.0))
    throw std::invalid_argument("pure_state: zero vector");
  Mat rho = x * x.adjoint();
  double tr = x.squaredNorm();
  return DensityOperator{std::move(rho), tr, std::abs(tr - 1.0) <= 1e-10};
}

cplx trace_pair(const Mat& T, const DensityOperator& rho) {
  if (T.rows() != rho.matrix.rows() || T.cols() != rho.matrix.cols())
    throw std::invalid_argument("trace_pair: dimension mismatch");
  return (T * rho.matrix).trace();
}

POVM POVM::make(SpacePtr measurable, std::vector<Mat> effects) {
  if (!measurable) throw std::invalid_argument("POVM: null space");
  if (effects.size() != measurable->size())
    throw std::invalid_argument("POVM: one effect per atom required");
  if (effects.empty()) throw std::invalid_argument("POVM: empty effect list");
  const Eigen::Index d = effects.front().rows();
  Mat total = Mat::Zero(d, d);
  for (const auto& p : effects) {
    if (p.rows() != d || p.cols() != d)
      throw std::invalid_argument("POVM: effect dimension mismatch");
    require_hermitian_psd(p, "POVM effect");
    total += p;
  }
  if (frob_norm(total - Mat::Identity(d, d)) > 1e-10)
    throw std::invalid_argument("POVM: effects do not sum to the identity");
  return POVM{std::move(measurable), std::move(effects)};
}

OperatorMeasure POVM::as_operator_measure() const {
  return OperatorMeasure::make(dim(), measurable, effects, /*assert_normalized=*/true);
}

ComplexMeasure povm_probabilities(const POVM& P, const DensityOperator& rho) {
  if (!rho.normalized)
    throw std::invalid_argument("povm_probabilities: state must be normalized");
  if (rho.matrix.rows() != P.dim())
    throw std::invalid_argument("povm_probabilities: dimension mismatch");
  std::vector<cplx> weights(P.effects.size());
  for (std::size_t i = 0; i < P.effects.size(); ++i)
    weights[i] = (P.effects[i] * rho.matrix).trace();
  return ComplexMeasure{P.measurable, std::move(weights), 0.0};
}

Mat povm_integrate(const MeasurableFunction& f, const POVM& P) {
  const Eigen::Index d = P.dim();
  Mat sum = Mat::Zero(d, d);
  for (std::size_t i = 0; i < P.effects.size(); ++i)
    sum += f.eval(*P.measurable, i) * P.effects[i];
  return sum;
}

Instrument Instrument::make(SpacePtr measurable, std::vector<std::vector<Mat>> kraus,
                            bool assert_trace_preserving) {
  if (!measurable) throw std::invalid_argument("Instrument: null space");
  if (kraus.size() != measurable->size())
    throw std::invalid_argument("Instrument: one Kraus family per atom required");
  Eigen::Index d = -1;
  for (const auto& family : kraus)
    for (const auto& m : family) {
      if (d < 0) d = m.rows();
      if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("Instrument: Kraus dimension mismatch");
    }
  if (d < 0) throw std::invalid_argument("Instrument: no Kraus operators given");
  if (assert_trace_preserving) {
    Mat total = Mat::Zero(d, d);
    for (const auto& family : kraus)
      for (const auto& m : family) total += m.adjoint() * m;
    double defect = frob_norm(total - Mat::Identity(d, d));
    if (defect > 1e-10)
      throw std::invalid_argument("Instrument: completeness defect " + std::to_string(defect));
  }
  return Instrument{std::move(measurable), std::move(kraus), assert_trace_preserving};
}

Eigen::Index Instrument::dim() const {
  for (const auto& family : kraus)
    if (!family.empty()) return family.front().rows();
  return 0;
}

Mat Instrument::apply_atom(std::size_t atom, const Mat& rho) const {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& m : kraus.at(atom)) out += m * rho * m.adjoint();
  return out;
}

DensityOperator instrument_apply(const Instrument& E, const MeasurableSet& A,
                                 const DensityOperator& rho) {
  require_same_space(E.measurable, A.space(), "instrument_apply");
  const Eigen::Index d = rho.matrix.rows();
  if (E.dim() != d) throw std::invalid_argument("instrument_apply: dimension mismatch");
  Mat out = Mat::Zero(d, d);
  for (auto i : A.indices()) out += E.apply_atom(i, rho.matrix);
  // Kraus form maps PSD to PSD; skip the eigenvalue re-check and record the
  // exact trace.
  double tr = out.trace().real();
  return DensityOperator{std::move(out), tr, std::abs(tr - 1.0) <= 1e-10};
}

ComplexMeasure operation_projection(const Instrument& E, const Mat& T,
                                    const DensityOperator& rho) {
  const Eigen::Index d = rho.matrix.rows();
  if (E.dim() != d || T.rows() != d || T.cols() != d)
    throw std::invalid_argument("operation_projection: dimension mismatch");
  std::vector<cplx> weights(E.kraus.size());
  for (std::size_t i = 0; i < E.kraus.size(); ++i)
    weights[i] = (T * E.apply_atom(i, rho.matrix)).trace();
  return ComplexMeasure{E.measurable, std::move(weights), 0.0};
}

Vec vectorize(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvectorize(const Vec& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: size mismatch");
  return Eigen::Map<const Mat>(v.data(), dim, dim);
}

namespace {

// kron(A, B) with block (i,j) equal to A(i,j)·B.
Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Mat operation_integrate(const MeasurableFunction& f, const Instrument& E) {
  const Eigen::Index d = E.dim();
  Mat super = Mat::Zero(d * d, d * d);
  for (std::size_t i = 0; i < E.kraus.size(); ++i) {
    cplx fv = f.eval(*E.measurable, i);
    for (const auto& m : E.kraus[i])
      // vec(MρM†) = (conj(M) ⊗ M) vec(ρ) for column-major vec.
      super += fv * kron(m.conjugate(), m);
  }
  return super;
}

DensityOperator apply_superoperator(const Mat& S, const DensityOperator& rho) {
  const Eigen::Index d = rho.matrix.rows();
  if (S.rows() != d * d || S.cols() != d * d)
    throw std::invalid_argument("apply_superoperator: superoperator size mismatch");
  Mat out = unvectorize(S * vectorize(rho.matrix), d);
  return DensityOperator::from_matrix(std::move(out));
}

ExtensionReport mixed_state_extension_check(const POVM& P, const Instrument& E,
                                            const std::vector<Vec>& basis, double tol,
                                            ExtensionMode mode, std::uint64_t seed) {
  const Eigen::Index d = P.dim();
  if (E.dim() != d) throw std::invalid_argument("mixed_state_extension_check: dimension mismatch");
  require_same_space(P.measurable, E.measurable, "mixed_state_extension_check");
  if (static_cast<Eigen::Index>(basis.size()) != d)
    throw std::invalid_argument("mixed_state_extension_check: basis must span the space");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      cplx gram = basis[j].adjoint() * basis[i];
      double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(gram - target) > 1e-10)
        throw std::invalid_argument("mixed_state_extension_check: basis is not orthonormal");
    }

  std::vector<Mat> observables;
  if (mode == ExtensionMode::Expectation) {
    Rng rng(Rng::mix(seed, 0xe7a11u));
    for (int s = 0; s < 8; ++s) {
      Mat g = rng.gaussian_matrix(d, d);
      observables.push_back(((g + g.adjoint()) / 2.0).eval());
    }
  }

  ExtensionReport report;
  report.mode = (mode == ExtensionMode::StateInjection) ? "state-injection" : "expectation";
  report.per_atom.assign(P.effects.size(), 0.0);
  for (std::size_t a = 0; a < P.effects.size(); ++a) {
    for (const auto& e : basis) {
      Mat evolved = E.apply_atom(a, e * e.adjoint());
      double r = 0.0;
      if (mode == ExtensionMode::StateInjection) {
        // ρ_{𝒫(A)e}: the right side mapped into states through the pure-state
        // injection; zero vectors map to the zero state.
        Vec img = P.effects[a] * e;
        Mat target = img * img.adjoint();
        r = frob_norm(evolved - target);
      } else {
        Mat target = P.effects[a] * (e * e.adjoint());
        for (const auto& T : observables)
          r = std::max(r, std::abs(((T * evolved).trace() - (T * target).trace())));
      }
      report.per_atom[a] = std::max(report.per_atom[a], r);
    }
    report.max_residual = std::max(report.max_residual, report.per_atom[a]);
  }
  report.pass = report.max_residual <= tol;
  return report;
}

}  // namespace ovm
