#include "ccc/json_io.hpp"

namespace ccc::json_io {

namespace {

Field field_for(const Json& j, const std::optional<Field>& k) {
  if (k) return *k;
  if (!j.is_object() || !j.contains("descriptor"))
    fail(ErrorKind::SyntaxError, "missing field descriptor");
  return Field::parse(j.at("descriptor").get<std::string>());
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::SyntaxError, what);
}

}  // namespace

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::SyntaxError, std::string("invalid JSON: ") + e.what());
  }
}

Elem elem_from_json(const Field& k, const Json& j) {
  if (j.is_string()) return k.parse_element(j.get<std::string>());
  if (j.is_number_integer()) return k.from_int(j.get<long long>());
  fail(ErrorKind::SyntaxError, "field element must be a string or an integer");
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Vec vec_from_json(const Field& k, const Json& j) {
  require(j.is_array(), "vector must be an array");
  Vec v;
  for (const auto& x : j) v.push_back(elem_from_json(k, x));
  return v;
}

Json rows_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
  return rows;
}

Matrix rows_from_json(const Field& k, const Json& rows) {
  require(rows.is_array() && !rows.empty(), "rows must be a nonempty array");
  std::vector<Vec> vs;
  for (const auto& r : rows) {
    vs.push_back(vec_from_json(k, r));
    if (vs.back().size() != vs.front().size()) fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
  }
  return Matrix::from_rows(k, vs);
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["descriptor"] = m.field().descriptor();
  j["rows"] = rows_to_json(m);
  return j;
}

Matrix matrix_from_json(const Json& j, const std::optional<Field>& k) {
  if (j.is_array()) {
    require(k.has_value(), "bare rows need a field");
    return rows_from_json(*k, j);
  }
  require(j.is_object() && j.contains("rows"), "matrix object needs \"rows\"");
  return rows_from_json(field_for(j, k), j.at("rows"));
}

Json tuple_to_json(const MatrixTuple& t) {
  Json j;
  j["descriptor"] = t.empty() ? std::string("Q") : t.front().field().descriptor();
  j["matrices"] = Json::array();
  for (const auto& m : t) j["matrices"].push_back(rows_to_json(m));
  return j;
}

MatrixTuple tuple_from_json(const Json& j, const std::optional<Field>& k) {
  require(j.is_object() && j.contains("matrices"), "tuple object needs \"matrices\"");
  Field f = field_for(j, k);
  MatrixTuple t;
  for (const auto& m : j.at("matrices")) t.push_back(matrix_from_json(m, f));
  require(!t.empty(), "tuple must hold at least one matrix");
  for (const auto& m : t)
    if (!m.is_square() || m.rows() != t.front().rows())
      fail(ErrorKind::DimensionMismatch, "tuple matrices must be square of one size");
  return t;
}

Json poly_to_json(const Poly& p) {
  Json j;
  j["descriptor"] = p.field().descriptor();
  j["coeffs"] = vec_to_json(p.coeffs());
  return j;
}

Poly poly_from_json(const Json& j, const std::optional<Field>& k) {
  require(j.is_object() && j.contains("coeffs"), "polynomial object needs \"coeffs\"");
  Field f = field_for(j, k);
  return Poly(f, vec_from_json(f, j.at("coeffs")));
}

Json cocharacter_to_json(const Cocharacter& c) {
  Json j;
  j["weights"] = c.weights;
  if (c.conjugator) j["conjugator"] = matrix_to_json(*c.conjugator);
  return j;
}

Cocharacter cocharacter_from_json(const Field& k, const Json& j) {
  Cocharacter c;
  const Json& w = j.is_array() ? j : j.at("weights");
  require(w.is_array(), "weights must be an array");
  for (const auto& x : w) {
    require(x.is_number_integer(), "weights must be integers");
    c.weights.push_back(x.get<long long>());
  }
  if (j.is_object() && j.contains("conjugator") && !j.at("conjugator").is_null()) {
    c.conjugator = matrix_from_json(j.at("conjugator"), k);
    if (c.conjugator->rows() != c.weights.size() || !c.conjugator->is_square())
      fail(ErrorKind::DimensionMismatch, "conjugator size differs from the weight count");
  }
  return c;
}

Json limit_to_json(const LimitResult& r) {
  Json j;
  j["exists"] = r.exists;
  j["value"] = r.value ? vec_to_json(*r.value) : Json(nullptr);
  j["classification"] = limit_class_name(r.classification);
  return j;
}

Json factor_to_json(const FactorReport& r) {
  Json j;
  j["unit"] = r.unit.str();
  j["factors"] = Json::array();
  for (const auto& [f, e] : r.factors) {
    Json fj;
    fj["factor"] = f.str();
    fj["coeffs"] = vec_to_json(f.coeffs());
    fj["multiplicity"] = e;
    j["factors"].push_back(fj);
  }
  j["text"] = r.str();
  return j;
}

Json closedness_to_json(const ClosednessReport& r) {
  Json j;
  j["cocharacter_closed"] = r.closed;
  j["min_poly_factorization"] = factor_to_json(r.min_poly_factorization);
  if (!r.closed) {
    Json rows = Json::array();
    for (const auto& v : r.stable_subspace) rows.push_back(vec_to_json(v));
    j["stable_subspace"] = rows;
    if (r.destabilizer) j["destabilizer"] = cocharacter_to_json(*r.destabilizer);
    if (r.limit) j["limit"] = matrix_to_json(*r.limit);
  }
  return j;
}

Json endo_class_to_json(const EndoClass& c) {
  Json j;
  j["id"] = c.id();
  j["invariant_factors"] = Json::array();
  for (const auto& f : c.invariant_factors) j["invariant_factors"].push_back(f.str());
  j["min_poly"] = c.min_poly.str();
  j["char_poly"] = c.char_poly.str();
  j["commutant_dimension"] = c.commutant_dimension;
  j["representative"] = matrix_to_json(c.representative);
  return j;
}

Json module_report_to_json(const ModuleReport& r) {
  Json j;
  j["semisimple"] = r.semisimple;
  j["algebra_dimension"] = r.algebra_dimension;
  j["radical_dimension"] = r.radical_dimension;
  j["method"] = r.method;
  j["seed"] = r.seed;
  j["composition_factors"] = Json::array();
  for (const auto& f : r.factors) j["composition_factors"].push_back({{"dimension", f.dimension}, {"fingerprint", f.fingerprint}});
  j["series_basis"] = matrix_to_json(r.series.basis);
  j["series_layers"] = r.series.layers;
  return j;
}

Json graph_to_json(const AccessibilityGraph& g) {
  Json j;
  j["model"] = g.model;
  j["nodes"] = Json::array();
  for (const auto& n : g.nodes)
    j["nodes"].push_back({{"id", n.id}, {"representative", vec_to_json(n.representative)}, {"label", n.label}});
  j["edges"] = Json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"cocharacter", cocharacter_to_json(e.witness)}});
  j["minimal"] = g.minimal ? Json(*g.minimal) : Json(nullptr);
  return j;
}

AccessibilityGraph graph_from_json(const Field& k, const Json& j) {
  require(j.is_object() && j.contains("nodes") && j.contains("edges"), "graph object needs nodes and edges");
  AccessibilityGraph g;
  g.model = j.value("model", std::string());
  for (const auto& n : j.at("nodes"))
    g.nodes.push_back({n.at("id").get<std::string>(), vec_from_json(k, n.at("representative")),
                       n.value("label", std::string())});
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                       cocharacter_from_json(k, e.at("cocharacter"))});
  if (j.contains("minimal") && !j.at("minimal").is_null()) g.minimal = j.at("minimal").get<std::string>();
  return g;
}

Json antisymmetry_to_json(const AntisymmetryReport& r) {
  Json j;
  j["antisymmetric"] = r.antisymmetric();
  j["points"] = r.points;
  j["orbits"] = r.orbits;
  j["edges"] = r.edges;
  j["violations"] = Json::array();
  for (const auto& [a, b] : r.violations) j["violations"].push_back({a, b});
  return j;
}

Json figure_edges_to_json(unsigned p, const std::vector<g2::FigureEdge>& edges, const g2::RootSystem& rs) {
  Json j;
  j["p"] = p;
  j["convention"] = rs.convention().str();
  j["free_sign"] = rs.free_sign();
  j["classes"] = g2::figure_classes(p);
  j["edges"] = Json::array();
  for (const auto& e : edges) {
    Json ej;
    ej["from"] = e.from;
    ej["to"] = e.to;
    ej["cocharacter"] = {e.cocharacter.x, e.cocharacter.y};
    ej["conjugator"] = e.conjugator ? Json(e.conjugator->str()) : Json(nullptr);
    ej["source"] = e.source.str();
    ej["result"] = e.result.str();
    if (!e.note.empty()) ej["note"] = e.note;
    j["edges"].push_back(ej);
  }
  return j;
}

Json envelope(const Json& inputs, const std::string& descriptor, std::uint64_t seed, Json report) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["inputs"] = inputs;
  j["descriptor"] = descriptor;
  j["seed"] = seed;
  j["report"] = std::move(report);
  return j;
}

Json error_object(const std::string& kind, const std::string& message, const Json& inputs) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["inputs"] = inputs;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

}  // namespace ccc::json_io
