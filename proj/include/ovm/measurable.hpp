#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "ovm/types.hpp"

namespace ovm {

enum class SpaceKind { Finite, TruncatedCountable };

/// A measurable space whose σ-algebra is the power set of a finite list of
/// atoms. On such spaces every partition supremum is attained by singletons,
/// so total variation is an exact sum rather than a supremum.
///
/// Countably infinite spaces are represented by their leading atoms together
/// with a caller-certified bound on the mass carried by everything past the
/// truncation; operations propagate that bound as an explicit error interval.
class AtomicSpace {
public:
  /// Validates: unique atom ids, labels empty or one per atom, tail_bound
  /// nonnegative and zero for finite spaces.
  static std::shared_ptr<const AtomicSpace> make(std::vector<std::string> atoms,
                                                 std::vector<cplx> labels = {},
                                                 SpaceKind kind = SpaceKind::Finite,
                                                 double tail_bound = 0.0);

  /// Atoms "a0".."a{n-1}", unlabeled.
  static std::shared_ptr<const AtomicSpace> indexed(std::size_t n);

  /// Atoms "a0".."a{n-1}" with labels 0, 1, ..., n-1.
  static std::shared_ptr<const AtomicSpace> indexed_labeled(std::size_t n);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom(std::size_t i) const { return atoms_[i]; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<cplx>& labels() const { return labels_; }
  cplx label(std::size_t i) const;  // throws if the space is unlabeled
  SpaceKind kind() const { return kind_; }
  double tail_bound() const { return tail_bound_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  friend bool operator==(const AtomicSpace& a, const AtomicSpace& b);
  friend bool operator!=(const AtomicSpace& a, const AtomicSpace& b) { return !(a == b); }

private:
  AtomicSpace() = default;
  std::vector<std::string> atoms_;
  std::vector<cplx> labels_;
  SpaceKind kind_ = SpaceKind::Finite;
  double tail_bound_ = 0.0;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const AtomicSpace>;

/// Structural identity; pointer equality short-circuits.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Throws std::invalid_argument on mismatch.
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

/// A measurable set: a subset of a space's atoms, kept as sorted indices.
class MeasurableSet {
public:
  static MeasurableSet of_indices(SpacePtr space, std::vector<std::size_t> indices);
  static MeasurableSet of_ids(SpacePtr space, const std::vector<std::string>& ids);
  static MeasurableSet empty(SpacePtr space);
  static MeasurableSet full(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::vector<std::string> ids() const;
  std::size_t size() const { return indices_.size(); }
  bool is_empty() const { return indices_.empty(); }
  bool contains(std::size_t atom) const;

  MeasurableSet complement() const;
  MeasurableSet set_union(const MeasurableSet& other) const;
  MeasurableSet set_intersection(const MeasurableSet& other) const;
  MeasurableSet set_difference(const MeasurableSet& other) const;
  bool disjoint_from(const MeasurableSet& other) const;

private:
  MeasurableSet(SpacePtr space, std::vector<std::size_t> indices);
  SpacePtr space_;
  std::vector<std::size_t> indices_;
};

/// A complex function on the atoms: either a table of values or a named form
/// evaluated lazily at the atom labels.
class MeasurableFunction {
public:
  static MeasurableFunction tabulated(std::vector<cplx> values);
  static MeasurableFunction constant(cplx c);
  static MeasurableFunction indicator(const MeasurableSet& set);
  static MeasurableFunction indicator_ids(std::vector<std::string> ids);
  /// p(λ) = c0 + c1 λ + c2 λ² + ... evaluated at the atom label.
  static MeasurableFunction poly(std::vector<cplx> coeffs);
  /// exp(a λ) at the atom label.
  static MeasurableFunction exp_scale(cplx a);
  static MeasurableFunction modulus(MeasurableFunction inner);
  static MeasurableFunction real_part(MeasurableFunction inner);

  cplx eval(const AtomicSpace& space, std::size_t atom) const;

  /// max |f| over the listed atoms.
  double sup_norm(const AtomicSpace& space) const;

  /// True when |f| past the truncation admits a certified bound: tables and
  /// indicators vanish there, constants are constant, and label-driven forms
  /// qualify only on finite spaces.
  bool tail_bounded(const AtomicSpace& space) const;

  /// Certified sup of |f| past the truncation; throws when !tail_bounded.
  double tail_sup(const AtomicSpace& space) const;

  bool is_tabulated() const;
  const std::vector<cplx>* tabulated_values() const;  // null unless tabulated

  struct Tabulated { std::vector<cplx> values; };
  struct Constant { cplx value; };
  struct Indicator { std::vector<std::string> ids; std::unordered_set<std::string> lookup; };
  struct Poly { std::vector<cplx> coeffs; };
  struct ExpScale { cplx scale; };
  struct Modulus { std::shared_ptr<const MeasurableFunction> inner; };
  struct RealPart { std::shared_ptr<const MeasurableFunction> inner; };
  using Repr = std::variant<Tabulated, Constant, Indicator, Poly, ExpScale, Modulus, RealPart>;

  const Repr& repr() const { return repr_; }

private:
  explicit MeasurableFunction(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

/// An atomic complex measure: one weight per listed atom plus a certified
/// bound on the total variation carried by the omitted atoms.
struct ComplexMeasure {
  SpacePtr space;
  std::vector<cplx> weights;
  double tail_tv_bound = 0.0;

  static ComplexMeasure make(SpacePtr space, std::vector<cplx> weights,
                             double tail_tv_bound = 0.0);
};

ComplexMeasure operator+(const ComplexMeasure& a, const ComplexMeasure& b);
ComplexMeasure operator-(const ComplexMeasure& a, const ComplexMeasure& b);
ComplexMeasure operator*(cplx scale, const ComplexMeasure& m);

/// Real nonnegative weights summing to one, up to the truncation tail.
bool is_probability(const ComplexMeasure& mu, double tol = 1e-9);

/// μ(E) = Σ_{ω∈E} w_ω. Additive over disjoint sets by construction.
cplx measure_of(const ComplexMeasure& mu, const MeasurableSet& E);

/// |μ|(E) = Σ_{ω∈E} |w_ω|; exact for atomic measures.
double total_variation(const ComplexMeasure& mu, const MeasurableSet& E);

/// Σ_ω f(ω) w_ω over listed atoms. Throws for label-driven forms on a
/// truncated space, where the tail contribution cannot be certified.
cplx integrate_scalar(const MeasurableFunction& f, const ComplexMeasure& mu);

/// Certified bound on |integrate_scalar − true integral|:
/// tail_sup(f) · tail_tv_bound.
double integrate_tail_bound(const MeasurableFunction& f, const ComplexMeasure& mu);

/// Total variation of the difference; dominates sup_E |μ1(E) − μ2(E)| and
/// vanishes iff the measures agree on every listed atom.
double setwise_defect(const ComplexMeasure& a, const ComplexMeasure& b);

}  // namespace ovm
