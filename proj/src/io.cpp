#include "ovm/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace ovm::io {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  bad("expected a complex number as [re, im]");
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array()) bad("expected a vector as an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a matrix as an array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) bad("expected a matrix row as an array");
  const std::size_t cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k]);
  }
  return m;
}

json space_to_json(const AtomicSpace& s) {
  json out;
  out["atoms"] = s.atoms();
  if (s.has_labels()) {
    json labels = json::array();
    for (const auto& l : s.labels()) labels.push_back(complex_to_json(l));
    out["labels"] = std::move(labels);
  }
  out["tail_bound"] = s.tail_bound();
  // kind is implied by tail_bound except for a zero-tail truncated space.
  if (s.kind() == SpaceKind::TruncatedCountable && s.tail_bound() == 0.0)
    out["kind"] = "truncated-countable";
  return out;
}

SpacePtr space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms")) bad("expected a space object with 'atoms'");
  std::vector<std::string> atoms = j.at("atoms").get<std::vector<std::string>>();
  std::vector<cplx> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(complex_from_json(l));
  double tail = j.value("tail_bound", 0.0);
  SpaceKind kind = tail > 0.0 ? SpaceKind::TruncatedCountable : SpaceKind::Finite;
  if (j.contains("kind")) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "finite")
      kind = SpaceKind::Finite;
    else if (k == "truncated-countable")
      kind = SpaceKind::TruncatedCountable;
    else
      bad("unknown space kind '" + k + "'");
  }
  return AtomicSpace::make(std::move(atoms), std::move(labels), kind, tail);
}

json measure_to_json(const ComplexMeasure& m) {
  json out;
  out["space"] = space_to_json(*m.space);
  json weights = json::array();
  for (const auto& w : m.weights) weights.push_back(complex_to_json(w));
  out["weights"] = std::move(weights);
  out["tail_tv_bound"] = m.tail_tv_bound;
  return out;
}

ComplexMeasure measure_from_json(const json& j) {
  SpacePtr space = space_from_json(j.at("space"));
  std::vector<cplx> weights;
  for (const auto& w : j.at("weights")) weights.push_back(complex_from_json(w));
  return ComplexMeasure::make(std::move(space), std::move(weights), j.value("tail_tv_bound", 0.0));
}

json function_to_json(const MeasurableFunction& f) {
  struct Visitor {
    json operator()(const MeasurableFunction::Tabulated& t) const {
      json values = json::array();
      for (const auto& v : t.values) values.push_back(complex_to_json(v));
      return json{{"tabulated", std::move(values)}};
    }
    json operator()(const MeasurableFunction::Constant& c) const {
      return json{{"form", "const"}, {"value", complex_to_json(c.value)}};
    }
    json operator()(const MeasurableFunction::Indicator& ind) const {
      return json{{"form", "indicator"}, {"atoms", ind.ids}};
    }
    json operator()(const MeasurableFunction::Poly& p) const {
      json coeffs = json::array();
      for (const auto& c : p.coeffs) coeffs.push_back(complex_to_json(c));
      return json{{"form", "poly"}, {"coeffs", std::move(coeffs)}};
    }
    json operator()(const MeasurableFunction::ExpScale& e) const {
      return json{{"form", "exp"}, {"scale", complex_to_json(e.scale)}};
    }
    json operator()(const MeasurableFunction::Modulus& m) const {
      return json{{"form", "abs"}, {"inner", function_to_json(*m.inner)}};
    }
    json operator()(const MeasurableFunction::RealPart& r) const {
      return json{{"form", "re"}, {"inner", function_to_json(*r.inner)}};
    }
  };
  return std::visit(Visitor{}, f.repr());
}

MeasurableFunction function_from_json(const json& j) {
  if (!j.is_object()) bad("expected a function object");
  if (j.contains("tabulated")) {
    std::vector<cplx> values;
    for (const auto& v : j.at("tabulated")) values.push_back(complex_from_json(v));
    return MeasurableFunction::tabulated(std::move(values));
  }
  std::string form = j.value("form", "");
  if (form == "const") return MeasurableFunction::constant(complex_from_json(j.at("value")));
  if (form == "indicator")
    return MeasurableFunction::indicator_ids(j.at("atoms").get<std::vector<std::string>>());
  if (form == "poly") {
    std::vector<cplx> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
    return MeasurableFunction::poly(std::move(coeffs));
  }
  if (form == "exp") return MeasurableFunction::exp_scale(complex_from_json(j.at("scale")));
  if (form == "abs") return MeasurableFunction::modulus(function_from_json(j.at("inner")));
  if (form == "re") return MeasurableFunction::real_part(function_from_json(j.at("inner")));
  bad("unknown function form '" + form + "'");
}

json descriptor_to_json(const SpaceDescriptor& d) {
  return json{{"dim", d.dim}, {"norm", norm_tag(d.norm)}};
}

SpaceDescriptor descriptor_from_json(const json& j) {
  SpaceDescriptor d;
  d.dim = j.at("dim").get<Eigen::Index>();
  d.norm = norm_from_tag(j.at("norm").get<std::string>());
  if (d.dim < 1) bad("space dimension must be positive");
  return d;
}

json bound_pair_to_json(const BoundPair& b) {
  return json{{"lower", b.lower}, {"upper", b.upper}, {"method", b.method}};
}

BoundPair bound_pair_from_json(const json& j) {
  return BoundPair{j.at("lower").get<double>(), j.at("upper").get<double>(),
                   j.value("method", "")};
}

json vector_measure_to_json(const VectorMeasure& m) {
  json atoms = json::array();
  for (const auto& v : m.atom_vectors) atoms.push_back(vector_to_json(v));
  return json{{"space", descriptor_to_json(m.space)},
              {"measurable", space_to_json(*m.measurable)},
              {"atom_vectors", std::move(atoms)},
              {"tail_norm_bound", m.tail_norm_bound}};
}

VectorMeasure vector_measure_from_json(const json& j) {
  SpaceDescriptor space = descriptor_from_json(j.at("space"));
  SpacePtr measurable = space_from_json(j.at("measurable"));
  std::vector<Vec> atoms;
  for (const auto& v : j.at("atom_vectors")) atoms.push_back(vector_from_json(v));
  return VectorMeasure::make(space, std::move(measurable), std::move(atoms),
                             j.value("tail_norm_bound", 0.0));
}

json operator_measure_to_json(const OperatorMeasure& m) {
  json atoms = json::array();
  for (const auto& k : m.atom_operators) atoms.push_back(matrix_to_json(k));
  return json{{"dim", m.dim},
              {"measurable", space_to_json(*m.measurable)},
              {"atom_operators", std::move(atoms)},
              {"normalized", m.normalized},
              {"tail_norm_bound", m.tail_norm_bound}};
}

OperatorMeasure operator_measure_from_json(const json& j) {
  Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  SpacePtr measurable = space_from_json(j.at("measurable"));
  std::vector<Mat> atoms;
  for (const auto& k : j.at("atom_operators")) atoms.push_back(matrix_from_json(k));
  return OperatorMeasure::make(dim, std::move(measurable), std::move(atoms),
                               j.value("normalized", false), j.value("tail_norm_bound", 0.0));
}

json spectral_to_json(const SpectralMeasure& e) {
  json values = json::array();
  for (const auto& l : e.eigenvalues) values.push_back(complex_to_json(l));
  json projections = json::array();
  for (const auto& p : e.projections) projections.push_back(matrix_to_json(p));
  return json{{"eigenvalues", std::move(values)}, {"projections", std::move(projections)}};
}

SpectralMeasure spectral_from_json(const json& j) {
  SpectralMeasure e;
  for (const auto& l : j.at("eigenvalues")) e.eigenvalues.push_back(complex_from_json(l));
  for (const auto& p : j.at("projections")) e.projections.push_back(matrix_from_json(p));
  if (e.eigenvalues.size() != e.projections.size())
    bad("spectral measure needs one projection per eigenvalue");
  if (e.projections.empty()) bad("empty spectral measure");
  e.dim = e.projections.front().rows();
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < e.eigenvalues.size(); ++i) atoms.push_back("l" + std::to_string(i));
  e.support = AtomicSpace::make(std::move(atoms), e.eigenvalues);
  return e;
}

json povm_to_json(const POVM& p) {
  json effects = json::array();
  for (const auto& eff : p.effects) effects.push_back(matrix_to_json(eff));
  return json{{"atoms", p.measurable->atoms()}, {"effects", std::move(effects)}};
}

POVM povm_from_json(const json& j) {
  SpacePtr space = AtomicSpace::make(j.at("atoms").get<std::vector<std::string>>());
  std::vector<Mat> effects;
  for (const auto& eff : j.at("effects")) effects.push_back(matrix_from_json(eff));
  return POVM::make(std::move(space), std::move(effects));
}

json instrument_to_json(const Instrument& e) {
  json kraus = json::array();
  for (const auto& family : e.kraus) {
    json fam = json::array();
    for (const auto& m : family) fam.push_back(matrix_to_json(m));
    kraus.push_back(std::move(fam));
  }
  return json{{"atoms", e.measurable->atoms()},
              {"kraus", std::move(kraus)},
              {"trace_preserving", e.trace_preserving}};
}

Instrument instrument_from_json(const json& j) {
  SpacePtr space = AtomicSpace::make(j.at("atoms").get<std::vector<std::string>>());
  std::vector<std::vector<Mat>> kraus;
  for (const auto& family : j.at("kraus")) {
    std::vector<Mat> fam;
    for (const auto& m : family) fam.push_back(matrix_from_json(m));
    kraus.push_back(std::move(fam));
  }
  return Instrument::make(std::move(space), std::move(kraus),
                          j.value("trace_preserving", false));
}

json state_to_json(const DensityOperator& rho) {
  return json{{"matrix", matrix_to_json(rho.matrix)},
              {"trace", rho.trace},
              {"normalized", rho.normalized}};
}

DensityOperator state_from_json(const json& j) {
  if (j.contains("pure")) return pure_state(vector_from_json(j.at("pure")));
  return DensityOperator::from_matrix(matrix_from_json(j.at("matrix")));
}

json extension_report_to_json(const ExtensionReport& r) {
  return json{{"max_residual", r.max_residual},
              {"per_atom", r.per_atom},
              {"pass", r.pass},
              {"mode", r.mode}};
}

ExtensionReport extension_report_from_json(const json& j) {
  ExtensionReport r;
  r.max_residual = j.at("max_residual").get<double>();
  r.per_atom = j.at("per_atom").get<std::vector<double>>();
  r.pass = j.at("pass").get<bool>();
  r.mode = j.value("mode", "");
  return r;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace ovm::io
