#include "ovm/operator_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ovm {

namespace {

void check_atoms(Eigen::Index dim, const SpacePtr& measurable, const std::vector<Mat>& ops,
                 const char* what) {
  if (!measurable) throw std::invalid_argument(std::string(what) + ": null measurable space");
  if (ops.size() != measurable->size())
    throw std::invalid_argument(std::string(what) + ": one operator per atom required");
  for (const auto& k : ops)
    if (k.rows() != dim || k.cols() != dim)
      throw std::invalid_argument(std::string(what) + ": operator dimension mismatch");
}

}  // namespace

OperatorMeasure OperatorMeasure::make(Eigen::Index dim, SpacePtr measurable,
                                      std::vector<Mat> atom_operators, bool assert_normalized,
                                      double tail_norm_bound) {
  check_atoms(dim, measurable, atom_operators, "OperatorMeasure");
  if (tail_norm_bound < 0.0) throw std::invalid_argument("OperatorMeasure: negative tail bound");
  if (assert_normalized) {
    Mat total = Mat::Zero(dim, dim);
    for (const auto& k : atom_operators) total += k;
    double defect = frob_norm(total - Mat::Identity(dim, dim));
    if (defect > 1e-10)
      throw std::invalid_argument("OperatorMeasure: normalization defect " +
                                  std::to_string(defect));
  }
  return OperatorMeasure{dim, std::move(measurable), std::move(atom_operators),
                         assert_normalized, tail_norm_bound};
}

Mat OperatorMeasure::measure_of(const MeasurableSet& E) const {
  require_same_space(measurable, E.space(), "OperatorMeasure::measure_of");
  Mat sum = Mat::Zero(dim, dim);
  for (auto i : E.indices()) sum += atom_operators[i];
  return sum;
}

OperatorProjectionFamily OperatorProjectionFamily::make(Eigen::Index dim, SpacePtr measurable,
                                                        std::vector<Mat> kernel,
                                                        double tail_norm_bound) {
  check_atoms(dim, measurable, kernel, "OperatorProjectionFamily");
  if (tail_norm_bound < 0.0)
    throw std::invalid_argument("OperatorProjectionFamily: negative tail bound");
  return OperatorProjectionFamily{dim, std::move(measurable), std::move(kernel),
                                  tail_norm_bound};
}

OperatorProjectionFamily operator_family_of(const OperatorMeasure& mu) {
  return OperatorProjectionFamily{mu.dim, mu.measurable, mu.atom_operators, mu.tail_norm_bound};
}

VectorProjectionFamily slice_by_vector(const OperatorProjectionFamily& fam, const Vec& x) {
  if (x.size() != fam.dim) throw std::invalid_argument("slice_by_vector: dimension mismatch");
  std::vector<Vec> kernel(fam.kernel.size());
  for (std::size_t i = 0; i < fam.kernel.size(); ++i) kernel[i] = fam.kernel[i] * x;
  double tail = fam.tail_norm_bound * x.norm();
  return VectorProjectionFamily{{fam.dim, Norm::L2}, fam.measurable, std::move(kernel), tail};
}

VectorProjectionFamily slice_by_functional(const OperatorProjectionFamily& fam,
                                           const Functional& L) {
  if (L.coeffs.size() != fam.dim)
    throw std::invalid_argument("slice_by_functional: dimension mismatch");
  std::vector<Vec> kernel(fam.kernel.size());
  for (std::size_t i = 0; i < fam.kernel.size(); ++i)
    kernel[i] = fam.kernel[i].transpose() * L.coeffs;
  double tail = fam.tail_norm_bound * L.coeffs.norm();
  return VectorProjectionFamily{{fam.dim, Norm::L2}, fam.measurable, std::move(kernel), tail};
}

Mat integrate_operator(const MeasurableFunction& f, const OperatorProjectionFamily& fam) {
  if (!f.tail_bounded(*fam.measurable))
    throw std::invalid_argument(
        "integrate_operator: unbounded named form on a truncated-countable space");
  Mat sum = Mat::Zero(fam.dim, fam.dim);
  for (std::size_t i = 0; i < fam.kernel.size(); ++i)
    sum += f.eval(*fam.measurable, i) * fam.kernel[i];
  return sum;
}

Mat SpectralMeasure::measure_of(const MeasurableSet& A) const {
  require_same_space(support, A.space(), "SpectralMeasure::measure_of");
  Mat sum = Mat::Zero(dim, dim);
  for (auto i : A.indices()) sum += projections[i];
  return sum;
}

OperatorMeasure SpectralMeasure::as_operator_measure() const {
  return OperatorMeasure::make(dim, support, projections, /*assert_normalized=*/true);
}

SpectralMeasure spectral_from_eigensystem(const std::vector<cplx>& eigenvalues, const Mat& U,
                                          double cluster_tol) {
  const Eigen::Index d = U.rows();
  if (U.cols() != d || static_cast<Eigen::Index>(eigenvalues.size()) != d)
    throw std::invalid_argument("spectral_from_eigensystem: inconsistent eigensystem");
  if (cluster_tol < 0.0) throw std::invalid_argument("spectral_from_eigensystem: bad tolerance");

  // Lexicographic (Re, Im) processing order makes the clustering and the
  // output atom order deterministic.
  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
    if (eigenvalues[a].real() != eigenvalues[b].real())
      return eigenvalues[a].real() < eigenvalues[b].real();
    return eigenvalues[a].imag() < eigenvalues[b].imag();
  };
  std::sort(order.begin(), order.end(), lex_less);

  // Greedy: join the nearest existing cluster anchor within tolerance.
  std::vector<std::vector<Eigen::Index>> clusters;
  std::vector<cplx> anchors;
  for (Eigen::Index idx : order) {
    const cplx lam = eigenvalues[idx];
    std::size_t best = clusters.size();
    double best_dist = cluster_tol;
    for (std::size_t c = 0; c < anchors.size(); ++c) {
      double dist = std::abs(lam - anchors[c]);
      if (dist <= best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    if (best == clusters.size()) {
      clusters.push_back({idx});
      anchors.push_back(lam);
    } else {
      clusters[best].push_back(idx);
    }
  }

  struct Cluster {
    cplx rep;
    Mat projection;
  };
  std::vector<Cluster> built;
  built.reserve(clusters.size());
  for (const auto& members : clusters) {
    cplx rep = 0.0;
    Mat p = Mat::Zero(d, d);
    for (Eigen::Index idx : members) {
      rep += eigenvalues[idx];
      p += U.col(idx) * U.col(idx).adjoint();
    }
    rep /= static_cast<double>(members.size());
    built.push_back({rep, std::move(p)});
  }
  std::sort(built.begin(), built.end(), [](const Cluster& a, const Cluster& b) {
    if (a.rep.real() != b.rep.real()) return a.rep.real() < b.rep.real();
    return a.rep.imag() < b.rep.imag();
  });

  std::vector<std::string> atoms;
  std::vector<cplx> labels;
  SpectralMeasure out;
  out.dim = d;
  for (std::size_t j = 0; j < built.size(); ++j) {
    atoms.push_back("l" + std::to_string(j));
    labels.push_back(built[j].rep);
    out.eigenvalues.push_back(built[j].rep);
    out.projections.push_back(std::move(built[j].projection));
  }
  out.support = AtomicSpace::make(std::move(atoms), std::move(labels));
  return out;
}

SpectralMeasure spectral_measure_of(const Mat& T, double cluster_tol) {
  const Eigen::Index d = T.rows();
  if (T.cols() != d) throw std::invalid_argument("spectral_measure_of: square matrix required");
  const double scale = op_norm(T);
  const double defect = normality_defect(T);
  const double threshold = 1e-10 * scale * scale;
  if (defect > threshold) throw normality_error(defect, threshold);

  double tol = cluster_tol > 0.0 ? cluster_tol : 1e-8 * scale;
  tol = std::max(tol, 1e-14 * scale);  // absolute-relative hybrid floor

  // For a normal matrix the Schur form is diagonal up to roundoff, so the
  // Schur basis is an orthonormal eigenbasis.
  Eigen::ComplexSchur<Mat> schur(T, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("spectral_measure_of: Schur decomposition failed");
  std::vector<cplx> eigenvalues(d);
  for (Eigen::Index i = 0; i < d; ++i) eigenvalues[i] = schur.matrixT()(i, i);
  return spectral_from_eigensystem(eigenvalues, schur.matrixU(), tol);
}

Mat functional_calculus(const MeasurableFunction& f, const Mat& T, double cluster_tol) {
  SpectralMeasure E = spectral_measure_of(T, cluster_tol);
  Mat sum = Mat::Zero(E.dim, E.dim);
  for (std::size_t j = 0; j < E.projections.size(); ++j)
    sum += f.eval(*E.support, j) * E.projections[j];
  return sum;
}

Mat functional_calculus(const std::function<cplx(cplx)>& f, const Mat& T, double cluster_tol) {
  SpectralMeasure E = spectral_measure_of(T, cluster_tol);
  Mat sum = Mat::Zero(E.dim, E.dim);
  for (std::size_t j = 0; j < E.projections.size(); ++j)
    sum += f(E.eigenvalues[j]) * E.projections[j];
  return sum;
}

double check_multiplicative(const SpectralMeasure& E, const MeasurableFunction& f,
                            const MeasurableFunction& g) {
  Mat mf = Mat::Zero(E.dim, E.dim);
  Mat mg = Mat::Zero(E.dim, E.dim);
  Mat mfg = Mat::Zero(E.dim, E.dim);
  for (std::size_t j = 0; j < E.projections.size(); ++j) {
    cplx fv = f.eval(*E.support, j);
    cplx gv = g.eval(*E.support, j);
    mf += fv * E.projections[j];
    mg += gv * E.projections[j];
    mfg += fv * gv * E.projections[j];
  }
  return frob_norm(mf * mg - mfg);
}

Vec basis_reconstruction(const OperatorProjectionFamily& fam, const MeasurableFunction& f,
                         const Vec& x, const std::vector<Vec>& basis) {
  const Eigen::Index d = fam.dim;
  if (x.size() != d) throw std::invalid_argument("basis_reconstruction: dimension mismatch");
  if (static_cast<Eigen::Index>(basis.size()) != d)
    throw std::invalid_argument("basis_reconstruction: basis must span the space");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != d)
      throw std::invalid_argument("basis_reconstruction: dimension mismatch");
    for (std::size_t j = 0; j <= i; ++j) {
      cplx gram = basis[j].adjoint() * basis[i];
      double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(gram - target) > 1e-10)
        throw std::invalid_argument("basis_reconstruction: basis is not orthonormal");
    }
  }
  Vec out = Vec::Zero(d);
  for (const auto& e : basis) {
    // μ_{x,e}(ω) = ⟨K_ω x, e⟩, conjugate-linear in e.
    cplx coeff = 0.0;
    for (std::size_t w = 0; w < fam.kernel.size(); ++w)
      coeff += f.eval(*fam.measurable, w) * (e.adjoint() * (fam.kernel[w] * x)).value();
    out += coeff * e;
  }
  return out;
}

OperatorMeasure series_operator_measure(const std::vector<ComplexMeasure>& lams,
                                        const std::vector<Mat>& Ts) {
  if (lams.empty() || lams.size() != Ts.size())
    throw std::invalid_argument("series_operator_measure: need matching nonempty lists");
  const Eigen::Index d = Ts.front().rows();
  const SpacePtr& measurable = lams.front().space;
  double lam_tails = 0.0;
  double scale = 1.0;
  for (std::size_t n = 0; n < lams.size(); ++n) {
    scale *= 0.5;
    require_same_space(measurable, lams[n].space, "series_operator_measure");
    if (!is_probability(lams[n]))
      throw std::invalid_argument("series_operator_measure: lambda_" + std::to_string(n + 1) +
                                  " is not a probability measure");
    if (Ts[n].rows() != d || Ts[n].cols() != d)
      throw std::invalid_argument("series_operator_measure: operator dimension mismatch");
    if (std::abs(op_norm(Ts[n]) - 1.0) > 1e-10)
      throw std::invalid_argument("series_operator_measure: T_" + std::to_string(n + 1) +
                                  " is not unit norm");
    lam_tails += scale * lams[n].tail_tv_bound;
  }
  const std::size_t count = measurable->size();
  std::vector<Mat> atoms(count, Mat::Zero(d, d));
  scale = 1.0;
  for (std::size_t n = 0; n < lams.size(); ++n) {
    scale *= 0.5;
    for (std::size_t i = 0; i < count; ++i) atoms[i] += scale * lams[n].weights[i] * Ts[n];
  }
  double tail = std::ldexp(1.0, -static_cast<int>(lams.size())) + lam_tails;
  return OperatorMeasure{d, measurable, std::move(atoms), /*normalized=*/false, tail};
}

}  // namespace ovm
