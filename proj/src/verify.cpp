#include "ovm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ovm/io.hpp"
#include "ovm/operator_measure.hpp"
#include "ovm/quantum.hpp"
#include "ovm/rng.hpp"
#include "ovm/vector_measure.hpp"

namespace ovm {

namespace {

using io::json;

template <typename T>
T pick(const std::vector<T>& values, int index, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
  return values[index % values.size()];
}

/// Collects check outcomes for one trial as residual/tolerance ratios.
struct Checker {
  double worst = 0.0;
  std::string worst_what;

  void check(double residual, double tolerance, const std::string& what) {
    double ratio;
    if (tolerance > 0.0)
      ratio = residual / tolerance;
    else
      ratio = residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (ratio > worst) {
      worst = ratio;
      char buf[64];
      std::snprintf(buf, sizeof(buf), " (residual %.3e, tol %.3e)", residual, tolerance);
      worst_what = what + buf;
    }
  }
  void check_true(bool ok, const std::string& what) { check(ok ? 0.0 : 1.0, 0.5, what); }
  bool ok() const { return worst <= 1.0; }
};

struct TrialOutcome {
  double ratio = 0.0;
  std::string detail;
  std::string digest;
  bool rejected = false;
};

std::uint64_t suite_salt(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename TrialFn>
VerificationReport run_generic(const std::string& suite, const TrialSpec& spec, TrialFn&& fn) {
  VerificationReport rep;
  rep.suite = suite;
  const std::uint64_t salt = suite_salt(suite);
  for (int t = 0; t < spec.trials; ++t) {
    std::uint64_t tseed = Rng::mix(spec.seed, Rng::mix(salt, static_cast<std::uint64_t>(t) + 1));
    TrialOutcome out = fn(tseed, t);
    if (out.rejected) continue;
    ++rep.trials;
    bool pass = out.ratio <= 1.0;
    rep.rows.push_back(TrialRow{tseed, out.ratio, pass});
    rep.max_residual = std::max(rep.max_residual, out.ratio);
    if (!pass) rep.failures.push_back(FailureRecord{tseed, out.digest, out.ratio, out.detail});
  }
  rep.pass = rep.failures.empty();
  return rep;
}

VectorProjectionFamily random_vector_family(Rng& rng, std::size_t atoms, int d, Norm norm) {
  SpacePtr space = AtomicSpace::indexed(atoms);
  std::vector<Vec> kernel(atoms);
  double total = 0.0;
  for (auto& k : kernel) {
    k = rng.gaussian_vector(d);
    total += vector_norm(k, norm);
  }
  if (total == 0.0) {
    kernel[0] = Vec::Unit(d, 0);
    total = 1.0;
  }
  for (auto& k : kernel) k /= total;  // Σ‖k_ω‖ = 1 keeps residual scales O(1)
  return VectorProjectionFamily{{d, norm}, std::move(space), std::move(kernel), 0.0};
}

OperatorProjectionFamily random_operator_family(Rng& rng, std::size_t atoms, int d) {
  SpacePtr space = AtomicSpace::indexed(atoms);
  std::vector<Mat> kernel(atoms);
  double total = 0.0;
  for (auto& k : kernel) {
    k = rng.gaussian_matrix(d, d);
    total += frob_norm(k);
  }
  for (auto& k : kernel) k /= total;
  return OperatorProjectionFamily{d, std::move(space), std::move(kernel), 0.0};
}

std::vector<Functional> trial_functionals(Rng& rng, const SpaceDescriptor& space, int count) {
  return dual_ball_sample(space, count, rng.next(), 4);
}

std::vector<Vec> trial_unit_vectors(Rng& rng, int d, int count) {
  std::vector<Vec> xs;
  for (int i = 0; i < count; ++i) {
    Vec x = rng.gaussian_vector(d);
    double n = x.norm();
    xs.push_back(n > 0 ? Vec(x / n) : Vec(Vec::Unit(d, 0)));
  }
  return xs;
}

/// A convergence chain f_0 ≤ f_1 ≤ ... → f (MCT) or |f_n| ≤ g, f_n → f
/// (DCT), with step sizes t_n = 2^{-(n+1)}.
struct Chain {
  std::vector<MeasurableFunction> fs;
  MeasurableFunction f = MeasurableFunction::constant(0.0);
  MeasurableFunction g = MeasurableFunction::constant(0.0);  // dominating function
  std::vector<double> t;
  bool truncation = false;  // MCT shape: min(f, level) stages before damping
};

Chain mct_chain(Rng& rng, std::size_t atoms, int length) {
  std::vector<cplx> fv(atoms);
  std::vector<double> damp(atoms);
  double fmax = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    double v = rng.uniform();
    fv[i] = v;
    fmax = std::max(fmax, v);
    damp[i] = rng.uniform();
  }
  Chain chain;
  chain.truncation = rng.coin();
  chain.f = MeasurableFunction::tabulated(fv);
  chain.g = chain.f;  // MCT chains are dominated by their limit
  const double stages = std::max(1, length / 3);
  for (int n = 0; n < length; ++n) {
    double t = std::ldexp(1.0, -(n + 1));
    chain.t.push_back(t);
    double level = chain.truncation ? fmax * std::min(1.0, (n + 1) / stages) : fmax;
    std::vector<cplx> values(atoms);
    for (std::size_t i = 0; i < atoms; ++i) {
      double base = std::min(fv[i].real(), level);
      values[i] = base * (1.0 - t * damp[i]);
    }
    chain.fs.push_back(MeasurableFunction::tabulated(std::move(values)));
  }
  return chain;
}

Chain dct_chain(Rng& rng, std::size_t atoms, int length) {
  std::vector<cplx> gv(atoms), fv(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    double g = 0.2 + 0.8 * rng.uniform();
    gv[i] = g;
    // |f| ≤ g/2 leaves room for the oscillation g·t_n with t_n ≤ 1/2.
    fv[i] = 0.5 * g * std::sqrt(rng.uniform()) * rng.unit_phase();
  }
  Chain chain;
  chain.f = MeasurableFunction::tabulated(fv);
  chain.g = MeasurableFunction::tabulated(gv);
  for (int n = 0; n < length; ++n) {
    double t = std::ldexp(1.0, -(n + 1));
    chain.t.push_back(t);
    std::vector<cplx> values(atoms);
    for (std::size_t i = 0; i < atoms; ++i) {
      double sign = rng.coin() ? 1.0 : -1.0;
      values[i] = fv[i] + gv[i].real() * t * sign;
    }
    chain.fs.push_back(MeasurableFunction::tabulated(std::move(values)));
  }
  return chain;
}

/// max_Λ |∫(f_n − f) dμ_Λ| — the weak-* residual.
double pairing_residual(const MeasurableFunction& fn, const MeasurableFunction& f,
                        const VectorProjectionFamily& fam,
                        const std::vector<Functional>& lambdas) {
  Vec gap = integrate_vector(fn, fam) - integrate_vector(f, fam);
  double r = 0.0;
  for (const auto& L : lambdas) r = std::max(r, std::abs(pair(L, gap)));
  return r;
}

/// max_Λ ∫|f_n − f| d|μ_Λ| — dominates the pairing residual and is monotone
/// for every monotone (or fixed-envelope) chain, which the pairing residual
/// of signed measures need not be.
double dominated_residual(const MeasurableFunction& fn, const MeasurableFunction& f,
                          const VectorProjectionFamily& fam,
                          const std::vector<Functional>& lambdas) {
  const auto& space = *fam.measurable;
  double r = 0.0;
  for (const auto& L : lambdas) {
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i)
      s += std::abs(fn.eval(space, i) - f.eval(space, i)) * std::abs(pair(L, fam.kernel[i]));
    r = std::max(r, s);
  }
  return r;
}

std::string family_digest(const VectorProjectionFamily& fam) {
  json j;
  j["space"] = io::descriptor_to_json(fam.space);
  json kernel = json::array();
  for (const auto& k : fam.kernel) kernel.push_back(io::vector_to_json(k));
  j["kernel"] = std::move(kernel);
  return io::fnv1a_hex(j.dump());
}

enum class ConvergenceKind { WeakStar, Norm };

/// Shared MCT/DCT trial body over a vector projection family.
void convergence_checks(Checker& checker, const Chain& chain, const VectorProjectionFamily& fam,
                        const std::vector<Functional>& lambdas, const TrialSpec& spec,
                        ConvergenceKind kind, bool monotone_chain) {
  const std::size_t L = chain.fs.size();
  std::vector<double> schedule(L), pairing(L), norm_gap(L);
  for (std::size_t n = 0; n < L; ++n) {
    pairing[n] = pairing_residual(chain.fs[n], chain.f, fam, lambdas);
    schedule[n] = dominated_residual(chain.fs[n], chain.f, fam, lambdas);
    if (kind == ConvergenceKind::Norm) {
      Vec gap = integrate_vector(chain.fs[n], fam) - integrate_vector(chain.f, fam);
      norm_gap[n] = vector_norm(gap, fam.space.norm);
    }
  }
  for (std::size_t n = 0; n + 1 < L; ++n)
    checker.check(std::max(0.0, schedule[n + 1] - schedule[n]), spec.monotone_slack,
                  "dominated residual schedule must not increase");
  for (std::size_t n = 0; n < L; ++n)
    checker.check(std::max(0.0, pairing[n] - schedule[n]), spec.monotone_slack,
                  "pairing residual must be dominated");
  // Damping-only chains have exactly proportional gaps, so the weak-*
  // residual itself is a monotone schedule; truncation stages may let signed
  // cancellations push it up, which the dominated schedule above covers.
  if (monotone_chain && !chain.truncation)
    for (std::size_t n = 0; n + 1 < L; ++n)
      checker.check(std::max(0.0, pairing[n + 1] - pairing[n]), spec.monotone_slack,
                    "weak-* residual schedule must not increase");
  checker.check(pairing[L - 1], spec.tol_final, "final weak-* residual");
  if (kind == ConvergenceKind::Norm) {
    std::vector<double> norm_schedule(L);
    const auto& space = *fam.measurable;
    for (std::size_t n = 0; n < L; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < space.size(); ++i)
        s += std::abs(chain.fs[n].eval(space, i) - chain.f.eval(space, i)) *
             vector_norm(fam.kernel[i], fam.space.norm);
      norm_schedule[n] = s;
    }
    for (std::size_t n = 0; n + 1 < L; ++n)
      checker.check(std::max(0.0, norm_schedule[n + 1] - norm_schedule[n]), spec.monotone_slack,
                    "norm residual schedule must not increase");
    for (std::size_t n = 0; n < L; ++n)
      checker.check(std::max(0.0, norm_gap[n] - norm_schedule[n]), spec.monotone_slack,
                    "norm residual must be dominated");
    checker.check(norm_gap[L - 1], spec.tol_final, "final norm residual");
  }
}

TrialOutcome convergence_trial(std::uint64_t tseed, int index, const TrialSpec& spec,
                               bool monotone_chain, ConvergenceKind kind) {
  Rng rng(tseed);
  const int d = pick(spec.dims, index, "dims");
  const std::size_t atoms = static_cast<std::size_t>(pick(spec.atom_counts, index, "atom_counts"));
  const Norm norm = pick(spec.norms, index, "norms");
  const bool operator_trial = index % 2 == 1;

  Chain chain = monotone_chain ? mct_chain(rng, atoms, spec.chain_length)
                               : dct_chain(rng, atoms, spec.chain_length);
  Checker checker;
  VectorProjectionFamily fam{{1, Norm::L2}, nullptr, {}, 0.0};
  if (operator_trial) {
    // Operator statements reduce to the sliced families μ(x); check a sample
    // of slices and report the worst.
    OperatorProjectionFamily ofam = random_operator_family(rng, atoms, d);
    auto lambdas = trial_functionals(rng, {d, Norm::L2}, spec.sample_functionals);
    auto xs = trial_unit_vectors(rng, d, spec.sample_vectors);
    if (!monotone_chain && !chain_dominated(chain.fs, chain.g, *ofam.measurable))
      return TrialOutcome{0.0, "", "", true};
    for (const auto& x : xs) {
      fam = slice_by_vector(ofam, x);
      convergence_checks(checker, chain, fam, lambdas, spec, kind, monotone_chain);
    }
  } else {
    fam = random_vector_family(rng, atoms, d, norm);
    auto lambdas = trial_functionals(rng, fam.space, spec.sample_functionals);
    if (!monotone_chain && !chain_dominated(chain.fs, chain.g, *fam.measurable))
      return TrialOutcome{0.0, "", "", true};
    convergence_checks(checker, chain, fam, lambdas, spec, kind, monotone_chain);
  }

  TrialOutcome out;
  out.ratio = checker.worst;
  if (!checker.ok()) {
    out.detail = checker.worst_what;
    out.digest = family_digest(fam);
  }
  return out;
}

}  // namespace

bool chain_dominated(const std::vector<MeasurableFunction>& chain, const MeasurableFunction& g,
                     const AtomicSpace& space) {
  for (const auto& fn : chain)
    for (std::size_t i = 0; i < space.size(); ++i)
      if (std::abs(fn.eval(space, i)) > std::abs(g.eval(space, i)) + 1e-15) return false;
  return true;
}

VerificationReport run_mct(const TrialSpec& spec) {
  return run_generic("mct", spec, [&](std::uint64_t tseed, int index) {
    return convergence_trial(tseed, index, spec, /*monotone_chain=*/true,
                             ConvergenceKind::WeakStar);
  });
}

VerificationReport run_dct(const TrialSpec& spec) {
  return run_generic("dct", spec, [&](std::uint64_t tseed, int index) {
    return convergence_trial(tseed, index, spec, /*monotone_chain=*/false,
                             ConvergenceKind::WeakStar);
  });
}

VerificationReport run_dct_proper(const TrialSpec& spec) {
  return run_generic("dct-proper", spec, [&](std::uint64_t tseed, int index) {
    return convergence_trial(tseed, index, spec, /*monotone_chain=*/false,
                             ConvergenceKind::Norm);
  });
}

VerificationReport run_semivariation_suite(const TrialSpec& spec) {
  return run_generic("semivariation", spec, [&](std::uint64_t tseed, int index) {
    Rng rng(tseed);
    Checker checker;
    const bool scalar_trial = index % 4 == 3;
    const int d = scalar_trial ? 1 : pick(spec.dims, index, "dims");
    const Norm norm = pick(spec.norms, index, "norms");
    const std::size_t atoms = 1 + static_cast<std::size_t>(rng.uniform_int(
                                      std::min(12, pick(spec.atom_counts, index, "atom_counts"))));
    VectorProjectionFamily fam = random_vector_family(rng, atoms, d, norm);
    SupBudget budget;
    budget.seed = rng.next();

    MeasurableSet omega = MeasurableSet::full(fam.measurable);
    BoundPair sv = semivariation(fam, omega, budget);
    checker.check(std::max(0.0, sv.lower - sv.upper), 0.0, "lower must not exceed upper");

    // Independent route to the 4·sup subset lemma.
    double subset_max = 0.0;
    for (std::uint64_t mask = 1; mask < (1ULL << atoms); ++mask) {
      Vec sum = Vec::Zero(d);
      for (std::size_t i = 0; i < atoms; ++i)
        if (mask & (1ULL << i)) sum += fam.kernel[i];
      subset_max = std::max(subset_max, vector_norm(sum, norm));
    }
    checker.check(std::max(0.0, sv.upper - 4.0 * subset_max), 1e-12 + 1e-12 * subset_max,
                  "upper must honor the 4-sup subset bound");
    checker.check(std::max(0.0, sv.lower - 4.0 * subset_max), 1e-12 + 1e-12 * subset_max,
                  "lower must honor the 4-sup subset bound");

    if (scalar_trial) {
      // In the scalar case semivariation collapses to total variation.
      double tv = 0.0;
      for (const auto& k : fam.kernel) tv += std::abs(k(0));
      checker.check(std::abs(sv.lower - tv), 1e-12 * (1.0 + tv), "scalar semivariation = TV");
      checker.check(std::abs(sv.upper - tv), 1e-12 * (1.0 + tv), "scalar semivariation = TV");
    }

    // Weighted measure μ^g: its semivariation brackets the sampled
    // sup_Λ ∫|g| d|μ_Λ|.
    std::vector<cplx> gv(atoms);
    for (auto& v : gv) v = rng.uniform() * rng.unit_phase();
    MeasurableFunction g = MeasurableFunction::tabulated(gv);
    VectorMeasure weighted = weighted_measure(g, fam);
    BoundPair wsv = semivariation(family_of(weighted), omega, budget);
    auto lambdas = trial_functionals(rng, fam.space, spec.sample_functionals);
    double sampled = 0.0;
    for (const auto& L : lambdas) {
      double s = 0.0;
      for (std::size_t i = 0; i < atoms; ++i)
        s += std::abs(g.eval(*fam.measurable, i)) * std::abs(pair(L, fam.kernel[i]));
      sampled = std::max(sampled, s);
    }
    checker.check(std::max(0.0, sampled - wsv.upper), 1e-12 * (1.0 + wsv.upper),
                  "sampled sup of the weighted projections must sit below upper");
    checker.check(std::max(0.0, wsv.lower - wsv.upper), 0.0, "weighted lower <= upper");

    // Geometric-tail truncated space: the semivariation of the tail sets
    // E_n = {atoms past n} decays with the tail and ends below the
    // certified bound.
    {
      const std::size_t m = 8;
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < m; ++i) ids.push_back("t" + std::to_string(i));
      SpacePtr tail_space = AtomicSpace::make(ids, {}, SpaceKind::TruncatedCountable,
                                              std::ldexp(1.0, -static_cast<int>(m)));
      std::vector<Vec> kernel(m);
      for (std::size_t i = 0; i < m; ++i) {
        Vec dir = rng.gaussian_vector(d);
        double nn = vector_norm(dir, norm);
        if (nn == 0.0) { dir = Vec::Unit(d, 0); nn = 1.0; }
        kernel[i] = std::ldexp(1.0, -static_cast<int>(i) - 1) * dir / nn;
      }
      VectorProjectionFamily geo{{d, norm}, tail_space, std::move(kernel),
                                 std::ldexp(1.0, -static_cast<int>(m))};
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n <= m; ++n) {
        std::vector<std::size_t> idx;
        for (std::size_t i = n; i < m; ++i) idx.push_back(i);
        BoundPair tail_sv = semivariation(geo, MeasurableSet::of_indices(tail_space, idx), budget);
        double cap = std::ldexp(1.0, -static_cast<int>(n));
        checker.check(std::max(0.0, tail_sv.upper - cap), 1e-12 * (1.0 + cap),
                      "tail semivariation must decay geometrically");
        checker.check(std::max(0.0, tail_sv.upper - prev), spec.monotone_slack,
                      "tail semivariation must not increase");
        prev = tail_sv.upper;
      }
      checker.check(std::max(0.0, prev - geo.tail_norm_bound), spec.monotone_slack,
                    "final tail semivariation below the certified bound");
    }

    TrialOutcome out;
    out.ratio = checker.worst;
    if (!checker.ok()) {
      out.detail = checker.worst_what;
      out.digest = family_digest(fam);
    }
    return out;
  });
}

VerificationReport run_boundedness_suite(const TrialSpec& spec) {
  return run_generic("boundedness", spec, [&](std::uint64_t tseed, int index) {
    Rng rng(tseed);
    Checker checker;
    const std::size_t atoms = static_cast<std::size_t>(pick(spec.atom_counts, index, "atom_counts"));
    SpacePtr space = AtomicSpace::indexed(atoms);
    MeasurableSet omega = MeasurableSet::full(space);

    // Pointwise-bounded family: |μ_j({ω})| ≤ B forces the TV certificate
    // atoms·2B at desk scale.
    const double bound = 0.5 + rng.uniform();
    double max_tv = 0.0;
    for (int j = 0; j < 8; ++j) {
      std::vector<cplx> w(atoms);
      for (auto& v : w) v = bound * std::sqrt(rng.uniform()) * rng.unit_phase();
      max_tv = std::max(max_tv, total_variation(ComplexMeasure{space, std::move(w), 0.0}, omega));
    }
    double certificate = 2.0 * bound * static_cast<double>(atoms);
    checker.check(std::max(0.0, max_tv - certificate), 1e-12 * certificate,
                  "pointwise bound must certify the family TV");

    // Setwise lemma: |∫f dμ_i − ∫f dμ| ≤ sup|f| · defect(μ_i, μ).
    std::vector<cplx> base(atoms), dir(atoms);
    for (auto& v : base) v = rng.cgaussian();
    for (auto& v : dir) v = rng.cgaussian();
    ComplexMeasure mu{space, base, 0.0};
    for (int i = 1; i <= 8; ++i) {
      std::vector<cplx> w(atoms);
      for (std::size_t k = 0; k < atoms; ++k) w[k] = base[k] + dir[k] / static_cast<double>(i);
      ComplexMeasure mu_i{space, std::move(w), 0.0};
      double defect = setwise_defect(mu_i, mu);
      for (int t = 0; t < 4; ++t) {
        std::vector<cplx> fv(atoms);
        for (auto& v : fv) v = std::sqrt(rng.uniform()) * rng.unit_phase();
        MeasurableFunction f = MeasurableFunction::tabulated(fv);
        double sup = f.sup_norm(*space);
        double gap = std::abs(integrate_scalar(f, mu_i) - integrate_scalar(f, mu));
        checker.check(std::max(0.0, gap - sup * defect),
                      1e-12 * (1.0 + sup * defect), "setwise lemma bound");
      }
    }

    TrialOutcome out;
    out.ratio = checker.worst;
    if (!checker.ok()) {
      out.detail = checker.worst_what;
      json j;
      j["weights"] = io::vector_to_json(Eigen::Map<const Vec>(base.data(), base.size()));
      out.digest = io::fnv1a_hex(j.dump());
    }
    return out;
  });
}

VerificationReport run_spectral_suite(const TrialSpec& spec) {
  return run_generic("spectral", spec, [&](std::uint64_t tseed, int index) {
    Rng rng(tseed);
    Checker checker;
    const int d = pick(spec.dims, index, "dims");

    if (index == 0) {
      // Negative probe: a nilpotent perturbation must be rejected.
      Mat bad = Mat::Zero(2, 2);
      bad(0, 1) = 1.0;
      bool rejected = false;
      try {
        spectral_measure_of(bad);
      } catch (const normality_error&) {
        rejected = true;
      }
      checker.check_true(rejected, "non-normal input must be rejected");
    }

    // Ground truth by construction: T = U D U† with known (U, D); forced
    // degeneracies reuse diagonal entries.
    Vec diag(d);
    for (Eigen::Index i = 0; i < d; ++i) diag(i) = 2.0 * rng.cgaussian();
    if (rng.coin() && d > 1) {
      int copies = 1 + rng.uniform_int(d - 1);
      for (int c = 0; c < copies; ++c) diag(rng.uniform_int(d)) = diag(0);
    }
    Mat U = rng.random_unitary(d);
    Mat T = U * diag.asDiagonal() * U.adjoint();

    SpectralMeasure E = spectral_measure_of(T);
    const double scale = op_norm(T);
    Mat identity = Mat::Identity(d, d);
    Mat sum = Mat::Zero(d, d);
    Mat reconstruction = Mat::Zero(d, d);
    for (std::size_t j = 0; j < E.projections.size(); ++j) {
      const Mat& p = E.projections[j];
      checker.check(frob_norm(p - p.adjoint()), 1e-10, "projection self-adjointness");
      checker.check(frob_norm(p * p - p), 1e-10, "projection idempotence");
      for (std::size_t k = 0; k < j; ++k)
        checker.check(frob_norm(p * E.projections[k]), 1e-10, "projection orthogonality");
      sum += p;
      reconstruction += E.eigenvalues[j] * p;
    }
    checker.check(frob_norm(sum - identity), 1e-10, "projection completeness");
    checker.check(frob_norm(reconstruction - T), 1e-9 * std::max(scale, 1e-300),
                  "spectral reconstruction");

    // Functional calculus against the generator's U f(D) U†.
    auto oracle = [&](const std::function<cplx(cplx)>& fn) {
      Vec fd(d);
      for (Eigen::Index i = 0; i < d; ++i) fd(i) = fn(diag(i));
      return Mat(U * fd.asDiagonal() * U.adjoint());
    };
    std::vector<std::function<cplx(cplx)>> fns;
    fns.emplace_back([](cplx z) { return z; });
    for (int k = 0; k < 3; ++k) {
      cplx c0 = rng.cgaussian(), c1 = rng.cgaussian(), c2 = rng.cgaussian(), c3 = rng.cgaussian();
      fns.emplace_back([=](cplx z) { return c0 + z * (c1 + z * (c2 + z * c3)); });
    }
    cplx a = 0.25 * rng.cgaussian();
    fns.emplace_back([=](cplx z) { return std::exp(a * z); });
    for (const auto& fn : fns) {
      Mat via_measure = functional_calculus(fn, T);
      Mat expected = oracle(fn);
      checker.check(frob_norm(via_measure - expected), 1e-9 * (1.0 + frob_norm(expected)),
                    "functional calculus vs eigendecomposition oracle");
    }

    // Multiplicativity of the spectral integral for polynomial pairs.
    std::vector<cplx> cf(3), cg(3);
    for (auto& c : cf) c = rng.cgaussian();
    for (auto& c : cg) c = rng.cgaussian();
    MeasurableFunction pf = MeasurableFunction::poly(cf);
    MeasurableFunction pg = MeasurableFunction::poly(cg);
    Mat mf = Mat::Zero(d, d), mg = Mat::Zero(d, d);
    for (std::size_t j = 0; j < E.projections.size(); ++j) {
      mf += pf.eval(*E.support, j) * E.projections[j];
      mg += pg.eval(*E.support, j) * E.projections[j];
    }
    double mult = check_multiplicative(E, pf, pg);
    checker.check(mult, 1e-10 * (1.0 + frob_norm(mf)) * (1.0 + frob_norm(mg)),
                  "spectral integral multiplicativity");

    TrialOutcome out;
    out.ratio = checker.worst;
    if (!checker.ok()) {
      out.detail = checker.worst_what;
      out.digest = io::fnv1a_hex(io::matrix_to_json(T).dump());
    }
    return out;
  });
}

VerificationReport run_suite(const std::string& name, const TrialSpec& spec) {
  if (name == "mct") return run_mct(spec);
  if (name == "dct") return run_dct(spec);
  if (name == "dct-proper") return run_dct_proper(spec);
  if (name == "semivariation") return run_semivariation_suite(spec);
  if (name == "boundedness") return run_boundedness_suite(spec);
  if (name == "spectral") return run_spectral_suite(spec);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<std::string> suite_names() {
  return {"mct", "dct", "dct-proper", "semivariation", "boundedness", "spectral"};
}

nlohmann::json report_to_json(const VerificationReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures)
    failures.push_back(json{{"seed", f.seed},
                            {"digest", f.digest},
                            {"residual", f.residual},
                            {"detail", f.detail}});
  return json{{"suite", report.suite},
              {"trials", report.trials},
              {"failures", std::move(failures)},
              {"max_residual", report.max_residual},
              {"pass", report.pass}};
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport rep;
  rep.suite = j.at("suite").get<std::string>();
  rep.trials = j.at("trials").get<int>();
  for (const auto& f : j.at("failures"))
    rep.failures.push_back(FailureRecord{f.at("seed").get<std::uint64_t>(),
                                         f.value("digest", ""), f.at("residual").get<double>(),
                                         f.value("detail", "")});
  rep.max_residual = j.at("max_residual").get<double>();
  rep.pass = j.at("pass").get<bool>();
  return rep;
}

std::string report_to_json_string(const VerificationReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
  std::string out = "suite,seed,residual,pass\n";
  char buf[128];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%llu,%.17g,%d\n", report.suite.c_str(),
                  static_cast<unsigned long long>(row.seed), row.residual, row.pass ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace ovm
