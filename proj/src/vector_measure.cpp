#include "ovm/vector_measure.hpp"

#include <cmath>
#include <stdexcept>

namespace ovm {

namespace {

void check_atoms(const SpaceDescriptor& space, const SpacePtr& measurable,
                 const std::vector<Vec>& vectors, const char* what) {
  if (!measurable) throw std::invalid_argument(std::string(what) + ": null measurable space");
  if (vectors.size() != measurable->size())
    throw std::invalid_argument(std::string(what) + ": one vector per atom required");
  for (const auto& v : vectors)
    if (v.size() != space.dim)
      throw std::invalid_argument(std::string(what) + ": vector dimension mismatch");
}

}  // namespace

VectorMeasure VectorMeasure::make(SpaceDescriptor space, SpacePtr measurable,
                                  std::vector<Vec> atom_vectors, double tail_norm_bound) {
  check_atoms(space, measurable, atom_vectors, "VectorMeasure");
  if (tail_norm_bound < 0.0) throw std::invalid_argument("VectorMeasure: negative tail bound");
  return VectorMeasure{space, std::move(measurable), std::move(atom_vectors), tail_norm_bound};
}

VectorProjectionFamily VectorProjectionFamily::make(SpaceDescriptor space, SpacePtr measurable,
                                                    std::vector<Vec> kernel,
                                                    double tail_norm_bound) {
  check_atoms(space, measurable, kernel, "VectorProjectionFamily");
  if (tail_norm_bound < 0.0)
    throw std::invalid_argument("VectorProjectionFamily: negative tail bound");
  return VectorProjectionFamily{space, std::move(measurable), std::move(kernel),
                                tail_norm_bound};
}

Vec measure_of_vector(const VectorMeasure& mu, const MeasurableSet& E) {
  require_same_space(mu.measurable, E.space(), "measure_of_vector");
  Vec sum = Vec::Zero(mu.space.dim);
  for (auto i : E.indices()) sum += mu.atom_vectors[i];
  return sum;
}

VectorProjectionFamily family_of(const VectorMeasure& mu) {
  return VectorProjectionFamily{mu.space, mu.measurable, mu.atom_vectors, mu.tail_norm_bound};
}

ComplexMeasure project(const VectorProjectionFamily& fam, const Functional& L) {
  if (L.coeffs.size() != fam.space.dim)
    throw std::invalid_argument("project: dimension mismatch");
  std::vector<cplx> weights(fam.kernel.size());
  for (std::size_t i = 0; i < fam.kernel.size(); ++i) weights[i] = pair(L, fam.kernel[i]);
  double tail = functional_norm(L, fam.space) * fam.tail_norm_bound;
  return ComplexMeasure{fam.measurable, std::move(weights), tail};
}

Vec integrate_vector(const MeasurableFunction& f, const VectorProjectionFamily& fam) {
  if (!f.tail_bounded(*fam.measurable))
    throw std::invalid_argument(
        "integrate_vector: unbounded named form on a truncated-countable space");
  Vec sum = Vec::Zero(fam.space.dim);
  for (std::size_t i = 0; i < fam.kernel.size(); ++i)
    sum += f.eval(*fam.measurable, i) * fam.kernel[i];
  return sum;
}

bool is_null(const VectorProjectionFamily& fam, const MeasurableSet& E) {
  require_same_space(fam.measurable, E.space(), "is_null");
  for (auto i : E.indices())
    if (!fam.kernel[i].isZero(0.0)) return false;
  return true;
}

BoundPair semivariation(const VectorProjectionFamily& fam, const MeasurableSet& A,
                        const SupBudget& budget) {
  require_same_space(fam.measurable, A.space(), "semivariation");
  std::vector<Vec> vectors;
  vectors.reserve(A.size());
  for (auto i : A.indices()) vectors.push_back(fam.kernel[i]);
  return abs_sum_dual_sup(vectors, fam.space, budget);
}

VectorMeasure weighted_measure(const MeasurableFunction& g, const VectorProjectionFamily& fam) {
  if (!g.tail_bounded(*fam.measurable))
    throw std::invalid_argument(
        "weighted_measure: unbounded named form on a truncated-countable space");
  std::vector<Vec> atoms(fam.kernel.size());
  for (std::size_t i = 0; i < fam.kernel.size(); ++i)
    atoms[i] = g.eval(*fam.measurable, i) * fam.kernel[i];
  double tail = g.tail_sup(*fam.measurable) * fam.tail_norm_bound;
  return VectorMeasure{fam.space, fam.measurable, std::move(atoms), tail};
}

VectorMeasure series_vector_measure(const std::vector<ComplexMeasure>& lams,
                                    const std::vector<Vec>& xs, const SpaceDescriptor& space) {
  if (lams.empty() || lams.size() != xs.size())
    throw std::invalid_argument("series_vector_measure: need matching nonempty lists");
  const SpacePtr& measurable = lams.front().space;
  double lam_tails = 0.0;
  double scale = 1.0;
  for (std::size_t n = 0; n < lams.size(); ++n) {
    scale *= 0.5;
    require_same_space(measurable, lams[n].space, "series_vector_measure");
    if (!is_probability(lams[n]))
      throw std::invalid_argument("series_vector_measure: lambda_" + std::to_string(n + 1) +
                                  " is not a probability measure");
    if (std::abs(vector_norm(xs[n], space.norm) - 1.0) > 1e-12)
      throw std::invalid_argument("series_vector_measure: x_" + std::to_string(n + 1) +
                                  " is not a unit vector");
    lam_tails += scale * lams[n].tail_tv_bound;
  }
  const std::size_t count = measurable->size();
  std::vector<Vec> atoms(count, Vec::Zero(space.dim));
  scale = 1.0;
  for (std::size_t n = 0; n < lams.size(); ++n) {
    scale *= 0.5;
    for (std::size_t i = 0; i < count; ++i) atoms[i] += scale * lams[n].weights[i] * xs[n];
  }
  // Geometric truncation tail Σ_{n>N} 2^{-n} = 2^{-N}, plus the listed terms'
  // own truncation mass.
  double tail = std::ldexp(1.0, -static_cast<int>(lams.size())) + lam_tails;
  return VectorMeasure{space, measurable, std::move(atoms), tail};
}

}  // namespace ovm
