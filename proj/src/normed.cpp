#include "ovm/normed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ovm/rng.hpp"

namespace ovm {

Norm dual_norm_of(Norm n) {
  switch (n) {
    case Norm::L1: return Norm::Linf;
    case Norm::L2: return Norm::L2;
    case Norm::Linf: return Norm::L1;
  }
  throw std::logic_error("dual_norm_of: bad norm");
}

std::string norm_tag(Norm n) {
  switch (n) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::Linf: return "linf";
  }
  throw std::logic_error("norm_tag: bad norm");
}

Norm norm_from_tag(const std::string& tag) {
  if (tag == "l1") return Norm::L1;
  if (tag == "l2") return Norm::L2;
  if (tag == "linf") return Norm::Linf;
  throw std::invalid_argument("unknown norm tag '" + tag + "'");
}

double vector_norm(const Vec& v, Norm n) {
  switch (n) {
    case Norm::L1: return v.cwiseAbs().sum();
    case Norm::L2: return v.norm();
    case Norm::Linf: return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  }
  throw std::logic_error("vector_norm: bad norm");
}

cplx pair(const Functional& L, const Vec& x) {
  if (L.coeffs.size() != x.size())
    throw std::invalid_argument("pair: dimension mismatch");
  // Bilinear: no conjugation.
  return (L.coeffs.array() * x.array()).sum();
}

double functional_norm(const Functional& L, const SpaceDescriptor& space) {
  if (L.coeffs.size() != space.dim)
    throw std::invalid_argument("functional_norm: dimension mismatch");
  return vector_norm(L.coeffs, dual_norm_of(space.norm));
}

namespace {

cplx phase_of(cplx z) {
  double m = std::abs(z);
  return m > 0.0 ? z / m : cplx(1.0, 0.0);
}

/// Λ in the dual unit ball maximizing Re Λ(w); attains ‖w‖ in the primal norm.
Functional align_functional(const Vec& w, Norm dual) {
  const Eigen::Index d = w.size();
  Vec c(d);
  switch (dual) {
    case Norm::Linf:
      for (Eigen::Index k = 0; k < d; ++k) c(k) = std::conj(phase_of(w(k)));
      break;
    case Norm::L1: {
      Eigen::Index best = 0;
      double m = -1.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        double a = std::abs(w(k));
        if (a > m) { m = a; best = k; }
      }
      c.setZero();
      c(best) = std::conj(phase_of(w(best)));
      break;
    }
    case Norm::L2: {
      double n = w.norm();
      if (n > 0.0)
        c = w.conjugate() / n;
      else {
        c.setZero();
        if (d > 0) c(0) = 1.0;
      }
      break;
    }
  }
  return Functional{std::move(c)};
}

double abs_sum(const Functional& L, const std::vector<Vec>& V) {
  double s = 0.0;
  for (const auto& v : V) s += std::abs(pair(L, v));
  return s;
}

/// One phase-alignment ascent pass from the given start.
double ascend(Functional L, const std::vector<Vec>& V, Norm dual, const SupBudget& budget) {
  const Eigen::Index d = L.coeffs.size();
  double value = abs_sum(L, V);
  for (int it = 0; it < budget.ascent_iters; ++it) {
    Vec w = Vec::Zero(d);
    for (const auto& v : V) w += std::conj(phase_of(pair(L, v))) * v;
    Functional next = align_functional(w, dual);
    double improved = abs_sum(next, V);
    bool converged = improved <= value * (1.0 + budget.ascent_rel_tol);
    if (improved > value) {
      L = std::move(next);
      value = improved;
    }
    if (converged) break;
  }
  return value;
}

}  // namespace

std::vector<Functional> dual_ball_sample(const SpaceDescriptor& space, int count,
                                         std::uint64_t seed, int phase_count) {
  if (count < 1) throw std::invalid_argument("dual_ball_sample: count must be >= 1");
  if (phase_count < 1) throw std::invalid_argument("dual_ball_sample: phase_count must be >= 1");
  if (space.dim < 1) throw std::invalid_argument("dual_ball_sample: dimension must be >= 1");
  const Eigen::Index d = space.dim;
  const Norm dual = dual_norm_of(space.norm);
  Rng rng(Rng::mix(seed, 0x5a3c9d01u));
  std::vector<Functional> out;

  std::vector<cplx> phases(phase_count);
  for (int p = 0; p < phase_count; ++p) {
    double a = 2.0 * std::numbers::pi * p / phase_count;
    phases[p] = {std::cos(a), std::sin(a)};
  }

  constexpr std::size_t kEnumCap = 4096;
  if (dual == Norm::L1) {
    // Extreme points e^{iφ} e_k.
    for (Eigen::Index k = 0; k < d; ++k)
      for (const auto& ph : phases) {
        Vec c = Vec::Zero(d);
        c(k) = ph;
        out.push_back(Functional{std::move(c)});
      }
  } else if (dual == Norm::Linf) {
    // Extreme points of the polydisc: every coordinate unimodular.
    double combos = std::pow(static_cast<double>(phase_count), static_cast<double>(d));
    if (combos <= static_cast<double>(kEnumCap)) {
      std::vector<int> idx(d, 0);
      for (std::size_t n = 0; n < static_cast<std::size_t>(combos); ++n) {
        Vec c(d);
        for (Eigen::Index k = 0; k < d; ++k) c(k) = phases[idx[k]];
        out.push_back(Functional{std::move(c)});
        for (Eigen::Index k = 0; k < d; ++k) {
          if (++idx[k] < phase_count) break;
          idx[k] = 0;
        }
      }
    } else {
      for (int n = 0; n < count; ++n) {
        Vec c(d);
        for (Eigen::Index k = 0; k < d; ++k) c(k) = phases[rng.uniform_int(phase_count)];
        out.push_back(Functional{std::move(c)});
      }
    }
  }

  // Uniformly random directions on the dual unit sphere.
  for (int n = 0; n < count; ++n) {
    Vec g = rng.gaussian_vector(d);
    double nm = vector_norm(g, dual);
    if (nm == 0.0) { g.setZero(); g(0) = 1.0; nm = 1.0; }
    out.push_back(Functional{g / nm});
  }
  return out;
}

BoundPair abs_sum_dual_sup(const std::vector<Vec>& V, const SpaceDescriptor& space,
                           const SupBudget& budget) {
  const Eigen::Index d = space.dim;
  const Norm primal = space.norm;
  const Norm dual = dual_norm_of(primal);
  for (const auto& v : V)
    if (v.size() != d) throw std::invalid_argument("abs_sum_dual_sup: dimension mismatch");

  const std::size_t m = V.size();
  bool all_zero = true;
  for (const auto& v : V)
    if (!v.isZero(0.0)) { all_zero = false; break; }
  if (m == 0 || all_zero) return BoundPair{0.0, 0.0, "zero"};

  // Termwise Hölder bound.
  double hoelder = 0.0;
  for (const auto& v : V) hoelder += vector_norm(v, primal);
  double upper = hoelder;
  std::string upper_method = "hoelder";

  // 4·sup_{F} ‖Σ_F v‖ over all subsets, by Gray-code enumeration.
  if (m <= static_cast<std::size_t>(budget.subset_limit)) {
    Vec acc = Vec::Zero(d);
    double best = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t total = 1ULL << m;
    for (std::uint64_t n = 1; n < total; ++n) {
      std::uint64_t next_gray = n ^ (n >> 1);
      std::uint64_t changed = gray ^ next_gray;
      int bit = std::countr_zero(changed);
      if (next_gray & changed)
        acc += V[bit];
      else
        acc -= V[bit];
      gray = next_gray;
      best = std::max(best, vector_norm(acc, primal));
    }
    double subset4 = 4.0 * best;
    if (subset4 < upper) {
      upper = subset4;
      upper_method = "subset4";
    }
  }

  // Lower bound: sampled starts + per-atom alignments, refined by ascent.
  auto sample = dual_ball_sample(space, budget.sample_count, budget.seed, budget.phase_count);
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) scored.emplace_back(abs_sum(sample[i], V), i);
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  double lower = 0.0;
  int starts = std::max(1, budget.ascent_starts);
  for (int s = 0; s < starts && s < static_cast<int>(scored.size()); ++s) {
    lower = std::max(lower, scored[s].first);
    lower = std::max(lower, ascend(sample[scored[s].second], V, dual, budget));
  }
  // Alignment to each individual atom guarantees lower ≥ max_ω ‖v_ω‖, and to
  // the plain sum covers the fully-coherent case.
  Vec plain = Vec::Zero(d);
  for (const auto& v : V) plain += v;
  lower = std::max(lower, ascend(align_functional(plain, dual), V, dual, budget));
  for (const auto& v : V)
    if (!v.isZero(0.0))
      lower = std::max(lower, ascend(align_functional(v, dual), V, dual, budget));

  lower = std::min(lower, upper);  // guard against last-ulp crossings
  return BoundPair{lower, upper, "ascent+" + upper_method};
}

}  // namespace ovm
