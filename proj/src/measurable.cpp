#include "ovm/measurable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ovm {

std::shared_ptr<const AtomicSpace> AtomicSpace::make(std::vector<std::string> atoms,
                                                     std::vector<cplx> labels,
                                                     SpaceKind kind, double tail_bound) {
  if (!labels.empty() && labels.size() != atoms.size())
    throw std::invalid_argument("AtomicSpace: labels must be empty or one per atom");
  if (tail_bound < 0.0) throw std::invalid_argument("AtomicSpace: negative tail_bound");
  if (kind == SpaceKind::Finite && tail_bound != 0.0)
    throw std::invalid_argument("AtomicSpace: finite space with nonzero tail_bound");

  auto space = std::shared_ptr<AtomicSpace>(new AtomicSpace());
  space->index_.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!space->index_.emplace(atoms[i], i).second)
      throw std::invalid_argument("AtomicSpace: duplicate atom id '" + atoms[i] + "'");
  }
  space->atoms_ = std::move(atoms);
  space->labels_ = std::move(labels);
  space->kind_ = kind;
  space->tail_bound_ = tail_bound;
  return space;
}

std::shared_ptr<const AtomicSpace> AtomicSpace::indexed(std::size_t n) {
  std::vector<std::string> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back("a" + std::to_string(i));
  return make(std::move(atoms));
}

std::shared_ptr<const AtomicSpace> AtomicSpace::indexed_labeled(std::size_t n) {
  std::vector<std::string> atoms;
  std::vector<cplx> labels;
  atoms.reserve(n);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    atoms.push_back("a" + std::to_string(i));
    labels.emplace_back(static_cast<double>(i), 0.0);
  }
  return make(std::move(atoms), std::move(labels));
}

cplx AtomicSpace::label(std::size_t i) const {
  if (labels_.empty()) throw std::invalid_argument("AtomicSpace: space has no labels");
  return labels_.at(i);
}

std::optional<std::size_t> AtomicSpace::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const AtomicSpace& a, const AtomicSpace& b) {
  return a.atoms_ == b.atoms_ && a.labels_ == b.labels_ && a.kind_ == b.kind_ &&
         a.tail_bound_ == b.tail_bound_;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (!same_space(a, b)) throw std::invalid_argument(std::string(what) + ": space mismatch");
}

MeasurableSet::MeasurableSet(SpacePtr space, std::vector<std::size_t> indices)
    : space_(std::move(space)), indices_(std::move(indices)) {}

MeasurableSet MeasurableSet::of_indices(SpacePtr space, std::vector<std::size_t> indices) {
  if (!space) throw std::invalid_argument("MeasurableSet: null space");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.back() >= space->size())
    throw std::invalid_argument("MeasurableSet: atom index out of range");
  return MeasurableSet(std::move(space), std::move(indices));
}

MeasurableSet MeasurableSet::of_ids(SpacePtr space, const std::vector<std::string>& ids) {
  if (!space) throw std::invalid_argument("MeasurableSet: null space");
  std::vector<std::size_t> indices;
  indices.reserve(ids.size());
  for (const auto& id : ids) {
    auto idx = space->index_of(id);
    if (!idx) throw std::invalid_argument("MeasurableSet: unknown atom id '" + id + "'");
    indices.push_back(*idx);
  }
  return of_indices(std::move(space), std::move(indices));
}

MeasurableSet MeasurableSet::empty(SpacePtr space) { return of_indices(std::move(space), {}); }

MeasurableSet MeasurableSet::full(SpacePtr space) {
  std::vector<std::size_t> all(space->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return of_indices(std::move(space), std::move(all));
}

std::vector<std::string> MeasurableSet::ids() const {
  std::vector<std::string> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.push_back(space_->atom(i));
  return out;
}

bool MeasurableSet::contains(std::size_t atom) const {
  return std::binary_search(indices_.begin(), indices_.end(), atom);
}

MeasurableSet MeasurableSet::complement() const {
  std::vector<std::size_t> out;
  out.reserve(space_->size() - indices_.size());
  for (std::size_t i = 0; i < space_->size(); ++i)
    if (!contains(i)) out.push_back(i);
  return MeasurableSet(space_, std::move(out));
}

MeasurableSet MeasurableSet::set_union(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "set_union");
  std::vector<std::size_t> out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(out));
  return MeasurableSet(space_, std::move(out));
}

MeasurableSet MeasurableSet::set_intersection(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "set_intersection");
  std::vector<std::size_t> out;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(out));
  return MeasurableSet(space_, std::move(out));
}

MeasurableSet MeasurableSet::set_difference(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "set_difference");
  std::vector<std::size_t> out;
  std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(),
                      other.indices_.end(), std::back_inserter(out));
  return MeasurableSet(space_, std::move(out));
}

bool MeasurableSet::disjoint_from(const MeasurableSet& other) const {
  return set_intersection(other).is_empty();
}

MeasurableFunction MeasurableFunction::tabulated(std::vector<cplx> values) {
  return MeasurableFunction(Tabulated{std::move(values)});
}

MeasurableFunction MeasurableFunction::constant(cplx c) {
  return MeasurableFunction(Constant{c});
}

MeasurableFunction MeasurableFunction::indicator(const MeasurableSet& set) {
  return indicator_ids(set.ids());
}

MeasurableFunction MeasurableFunction::indicator_ids(std::vector<std::string> ids) {
  Indicator ind;
  ind.lookup.insert(ids.begin(), ids.end());
  ind.ids = std::move(ids);
  return MeasurableFunction(std::move(ind));
}

MeasurableFunction MeasurableFunction::poly(std::vector<cplx> coeffs) {
  return MeasurableFunction(Poly{std::move(coeffs)});
}

MeasurableFunction MeasurableFunction::exp_scale(cplx a) {
  return MeasurableFunction(ExpScale{a});
}

MeasurableFunction MeasurableFunction::modulus(MeasurableFunction inner) {
  return MeasurableFunction(Modulus{std::make_shared<MeasurableFunction>(std::move(inner))});
}

MeasurableFunction MeasurableFunction::real_part(MeasurableFunction inner) {
  return MeasurableFunction(RealPart{std::make_shared<MeasurableFunction>(std::move(inner))});
}

namespace {

cplx eval_poly(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

cplx MeasurableFunction::eval(const AtomicSpace& space, std::size_t atom) const {
  if (atom >= space.size()) throw std::invalid_argument("MeasurableFunction: atom out of range");
  struct Visitor {
    const AtomicSpace& space;
    std::size_t atom;
    cplx operator()(const Tabulated& t) const {
      if (t.values.size() != space.size())
        throw std::invalid_argument("MeasurableFunction: table size does not match space");
      return t.values[atom];
    }
    cplx operator()(const Constant& c) const { return c.value; }
    cplx operator()(const Indicator& ind) const {
      return ind.lookup.count(space.atom(atom)) ? 1.0 : 0.0;
    }
    cplx operator()(const Poly& p) const { return eval_poly(p.coeffs, space.label(atom)); }
    cplx operator()(const ExpScale& e) const { return std::exp(e.scale * space.label(atom)); }
    cplx operator()(const Modulus& m) const { return std::abs(m.inner->eval(space, atom)); }
    cplx operator()(const RealPart& r) const { return r.inner->eval(space, atom).real(); }
  };
  return std::visit(Visitor{space, atom}, repr_);
}

double MeasurableFunction::sup_norm(const AtomicSpace& space) const {
  double sup = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) sup = std::max(sup, std::abs(eval(space, i)));
  return sup;
}

bool MeasurableFunction::tail_bounded(const AtomicSpace& space) const {
  if (space.kind() == SpaceKind::Finite) return true;
  struct Visitor {
    const AtomicSpace& space;
    bool operator()(const Tabulated&) const { return true; }
    bool operator()(const Constant&) const { return true; }
    bool operator()(const Indicator&) const { return true; }
    bool operator()(const Poly& p) const {
      for (std::size_t k = 1; k < p.coeffs.size(); ++k)
        if (p.coeffs[k] != cplx(0.0)) return false;
      return true;
    }
    bool operator()(const ExpScale& e) const { return e.scale == cplx(0.0); }
    bool operator()(const Modulus& m) const { return m.inner->tail_bounded(space); }
    bool operator()(const RealPart& r) const { return r.inner->tail_bounded(space); }
  };
  return std::visit(Visitor{space}, repr_);
}

double MeasurableFunction::tail_sup(const AtomicSpace& space) const {
  if (!tail_bounded(space))
    throw std::invalid_argument(
        "MeasurableFunction: unbounded named form on a truncated-countable space");
  if (space.kind() == SpaceKind::Finite) return 0.0;
  struct Visitor {
    const AtomicSpace& space;
    // Tables and indicators are zero past the listed atoms.
    double operator()(const Tabulated&) const { return 0.0; }
    double operator()(const Constant& c) const { return std::abs(c.value); }
    double operator()(const Indicator&) const { return 0.0; }
    double operator()(const Poly& p) const {
      return p.coeffs.empty() ? 0.0 : std::abs(p.coeffs[0]);
    }
    double operator()(const ExpScale&) const { return 1.0; }  // scale == 0 here
    double operator()(const Modulus& m) const { return m.inner->tail_sup(space); }
    double operator()(const RealPart& r) const { return r.inner->tail_sup(space); }
  };
  return std::visit(Visitor{space}, repr_);
}

bool MeasurableFunction::is_tabulated() const {
  return std::holds_alternative<Tabulated>(repr_);
}

const std::vector<cplx>* MeasurableFunction::tabulated_values() const {
  if (auto* t = std::get_if<Tabulated>(&repr_)) return &t->values;
  return nullptr;
}

ComplexMeasure ComplexMeasure::make(SpacePtr space, std::vector<cplx> weights,
                                    double tail_tv_bound) {
  if (!space) throw std::invalid_argument("ComplexMeasure: null space");
  if (weights.size() != space->size())
    throw std::invalid_argument("ComplexMeasure: weights must be indexed by the space atoms");
  if (tail_tv_bound < 0.0) throw std::invalid_argument("ComplexMeasure: negative tail bound");
  return ComplexMeasure{std::move(space), std::move(weights), tail_tv_bound};
}

ComplexMeasure operator+(const ComplexMeasure& a, const ComplexMeasure& b) {
  require_same_space(a.space, b.space, "ComplexMeasure+");
  std::vector<cplx> w(a.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.weights[i] + b.weights[i];
  return ComplexMeasure{a.space, std::move(w), a.tail_tv_bound + b.tail_tv_bound};
}

ComplexMeasure operator-(const ComplexMeasure& a, const ComplexMeasure& b) {
  require_same_space(a.space, b.space, "ComplexMeasure-");
  std::vector<cplx> w(a.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.weights[i] - b.weights[i];
  return ComplexMeasure{a.space, std::move(w), a.tail_tv_bound + b.tail_tv_bound};
}

ComplexMeasure operator*(cplx scale, const ComplexMeasure& m) {
  std::vector<cplx> w(m.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = scale * m.weights[i];
  return ComplexMeasure{m.space, std::move(w), std::abs(scale) * m.tail_tv_bound};
}

bool is_probability(const ComplexMeasure& mu, double tol) {
  double sum = 0.0;
  for (const auto& w : mu.weights) {
    if (std::abs(w.imag()) > tol || w.real() < -tol) return false;
    sum += w.real();
  }
  // Listed mass plus the (upper-bounded) truncation mass accounts for 1.
  return sum <= 1.0 + tol && sum + mu.tail_tv_bound >= 1.0 - tol;
}

cplx measure_of(const ComplexMeasure& mu, const MeasurableSet& E) {
  require_same_space(mu.space, E.space(), "measure_of");
  cplx sum = 0.0;
  for (auto i : E.indices()) sum += mu.weights[i];
  return sum;
}

double total_variation(const ComplexMeasure& mu, const MeasurableSet& E) {
  require_same_space(mu.space, E.space(), "total_variation");
  double sum = 0.0;
  for (auto i : E.indices()) sum += std::abs(mu.weights[i]);
  return sum;
}

cplx integrate_scalar(const MeasurableFunction& f, const ComplexMeasure& mu) {
  if (!f.tail_bounded(*mu.space))
    throw std::invalid_argument(
        "integrate_scalar: unbounded named form on a truncated-countable space");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < mu.space->size(); ++i) sum += f.eval(*mu.space, i) * mu.weights[i];
  return sum;
}

double integrate_tail_bound(const MeasurableFunction& f, const ComplexMeasure& mu) {
  return f.tail_sup(*mu.space) * mu.tail_tv_bound;
}

double setwise_defect(const ComplexMeasure& a, const ComplexMeasure& b) {
  require_same_space(a.space, b.space, "setwise_defect");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.weights.size(); ++i) sum += std::abs(a.weights[i] - b.weights[i]);
  return sum;
}

}  // namespace ovm
