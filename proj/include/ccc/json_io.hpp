#pragma once

// JSON forms of the library's values. Field elements are written as
// literal strings; readers also accept JSON integers.

#include <optional>
#include <string>

#include "json.hpp"

#include "ccc/endo.hpp"
#include "ccc/g2.hpp"
#include "ccc/orbit_graph.hpp"
#include "ccc/tuple.hpp"

namespace ccc::json_io {

using Json = nlohmann::ordered_json;

constexpr const char* kToolName = "ccc";
constexpr const char* kToolVersion = "1.0.0";

Json parse_text(const std::string& text);

Elem elem_from_json(const Field& k, const Json& j);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Field& k, const Json& j);

// {"descriptor", "rows"}; a given field overrides the stored descriptor.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::optional<Field>& k = std::nullopt);
// Bare rows, without a descriptor.
Json rows_to_json(const Matrix& m);
Matrix rows_from_json(const Field& k, const Json& rows);

// {"descriptor", "matrices"}; each entry is a rows array or a matrix object.
Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j, const std::optional<Field>& k = std::nullopt);

// {"descriptor", "coeffs": [c_0, ..., c_k]}
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, const std::optional<Field>& k = std::nullopt);

// {"weights", "conjugator"?}; the conjugator may be bare rows.
Json cocharacter_to_json(const Cocharacter& c);
Cocharacter cocharacter_from_json(const Field& k, const Json& j);

Json limit_to_json(const LimitResult& r);
Json factor_to_json(const FactorReport& r);
Json closedness_to_json(const ClosednessReport& r);
Json endo_class_to_json(const EndoClass& c);
Json module_report_to_json(const ModuleReport& r);

// {nodes:[{id, representative, label}], edges:[{from, to, cocharacter}], minimal}
Json graph_to_json(const AccessibilityGraph& g);
AccessibilityGraph graph_from_json(const Field& k, const Json& j);
Json antisymmetry_to_json(const AntisymmetryReport& r);

Json figure_edges_to_json(unsigned p, const std::vector<g2::FigureEdge>& edges, const g2::RootSystem& rs);

// Reproducibility envelope around a report.
Json envelope(const Json& inputs, const std::string& descriptor, std::uint64_t seed, Json report);
Json error_object(const std::string& kind, const std::string& message, const Json& inputs);

}  // namespace ccc::json_io
