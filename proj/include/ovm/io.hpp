#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ovm/measurable.hpp"
#include "ovm/normed.hpp"
#include "ovm/operator_measure.hpp"
#include "ovm/quantum.hpp"
#include "ovm/vector_measure.hpp"

namespace ovm::io {

using nlohmann::json;

// Complex numbers are two-element [re, im] arrays; readers also accept bare
// numbers as purely real. Matrices are row-major arrays of rows.

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json vector_to_json(const Vec& v);
Vec vector_from_json(const json& j);

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json space_to_json(const AtomicSpace& s);
SpacePtr space_from_json(const json& j);

json measure_to_json(const ComplexMeasure& m);
ComplexMeasure measure_from_json(const json& j);

json function_to_json(const MeasurableFunction& f);
MeasurableFunction function_from_json(const json& j);

json descriptor_to_json(const SpaceDescriptor& d);
SpaceDescriptor descriptor_from_json(const json& j);

json bound_pair_to_json(const BoundPair& b);
BoundPair bound_pair_from_json(const json& j);

json vector_measure_to_json(const VectorMeasure& m);
VectorMeasure vector_measure_from_json(const json& j);

json operator_measure_to_json(const OperatorMeasure& m);
OperatorMeasure operator_measure_from_json(const json& j);

json spectral_to_json(const SpectralMeasure& e);
SpectralMeasure spectral_from_json(const json& j);

json povm_to_json(const POVM& p);
POVM povm_from_json(const json& j);

json instrument_to_json(const Instrument& e);
Instrument instrument_from_json(const json& j);

json state_to_json(const DensityOperator& rho);
DensityOperator state_from_json(const json& j);

json extension_report_to_json(const ExtensionReport& r);
ExtensionReport extension_report_from_json(const json& j);

/// FNV-1a 64-bit hash rendered as hex; used for instance digests.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace ovm::io
