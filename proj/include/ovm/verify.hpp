#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ovm/measurable.hpp"
#include "ovm/normed.hpp"

namespace ovm {

/// Knobs for a randomized verification run. Every quantity the suites
/// generate derives from `seed`, so a spec pins the whole run.
struct TrialSpec {
  std::uint64_t seed = 1;
  int trials = 50;
  std::vector<int> dims = {2, 4, 8};
  std::vector<int> atom_counts = {6, 12};
  std::vector<Norm> norms = {Norm::L1, Norm::L2, Norm::Linf};
  int chain_length = 40;
  int sample_functionals = 16;
  int sample_vectors = 3;
  double tol_final = 1e-9;
  double monotone_slack = 1e-12;
};

struct TrialRow {
  std::uint64_t seed = 0;
  double residual = 0.0;  // worst check residual / its tolerance; pass iff <= 1
  bool pass = true;
};

struct FailureRecord {
  std::uint64_t seed = 0;
  std::string digest;  // fnv1a of the instance JSON, for isolated re-runs
  double residual = 0.0;
  std::string detail;
};

/// Outcome of one suite. Row residuals are normalized by the tolerance of
/// the violated (or tightest) check, so pass ⇔ residual ≤ 1 uniformly.
struct VerificationReport {
  std::string suite;
  int trials = 0;
  std::vector<FailureRecord> failures;
  double max_residual = 0.0;
  bool pass = true;  // invariant: pass ⇔ failures empty
  std::vector<TrialRow> rows;
};

/// Monotone convergence: chains 0 ≤ f_1 ≤ ... ↗ f against random vector and
/// operator projection families; residual schedules must decrease (up to
/// slack) and end below tol_final.
VerificationReport run_mct(const TrialSpec& spec);

/// Dominated convergence (weak-* form): dominated oscillating chains, with
/// the domination |f_n| ≤ g validated atomwise before a trial counts.
VerificationReport run_dct(const TrialSpec& spec);

/// Dominated convergence for properly integrable functions: same chains,
/// but the residual is the norm of the integral gap (strong-operator over
/// sampled vectors, in the operator case).
VerificationReport run_dct_proper(const TrialSpec& spec);

/// Semivariation: bound ordering, the 4·sup subset lemma, decreasing tails
/// on truncated-countable spaces, and bracketing of weighted measures.
VerificationReport run_semivariation_suite(const TrialSpec& spec);

/// Pointwise-bounded families have certified TV bounds; setwise-convergent
/// bounded sequences obey |∫f dμ_i − ∫f dμ| ≤ sup|f|·defect.
VerificationReport run_boundedness_suite(const TrialSpec& spec);

/// Spectral decomposition of random normal matrices (with forced
/// degeneracies): projection invariants, reconstruction, functional
/// calculus against the generator's ground truth, multiplicativity, and
/// rejection of non-normal input.
VerificationReport run_spectral_suite(const TrialSpec& spec);

/// Dispatch by suite name: mct | dct | dct-proper | semivariation |
/// boundedness | spectral.
VerificationReport run_suite(const std::string& name, const TrialSpec& spec);

std::vector<std::string> suite_names();

/// Atomwise |f_n| ≤ g (within 1e-15 slack) for every chain element; the
/// precondition filter for the dominated-convergence suites.
bool chain_dominated(const std::vector<MeasurableFunction>& chain, const MeasurableFunction& g,
                     const AtomicSpace& space);

nlohmann::json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);
std::string report_to_json_string(const VerificationReport& report);

/// One row per trial: suite, seed, residual, pass.
std::string report_to_csv(const VerificationReport& report);

}  // namespace ovm
