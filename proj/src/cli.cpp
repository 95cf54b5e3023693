#include "ccc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ccc/factor.hpp"
#include "ccc/json_io.hpp"
#include "ccc/models.hpp"

#ifndef CCC_DEMO_DIR
#define CCC_DEMO_DIR "demos"
#endif

namespace ccc::cli {

using json_io::Json;

namespace {

// Problems with the command line itself, as opposed to its mathematics.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string field;
  std::size_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  std::string format;  // empty: DOT for g2 figure, JSON elsewhere
  unsigned threads = 1;

  std::string poly, input;
  std::string matrix, companion, cocharacter, weights, limit;
  std::string model, seed_point;
  std::size_t n = 0, r = 2;
  std::string tuple;
  unsigned p = 0;
  std::string convention = "++++", word, coroot, strategy = "leftmost";
};

struct Report {
  Json body;
  std::string descriptor;
  std::uint64_t seed = 0;
  Json data = Json::object();  // resolved inputs
  std::optional<std::string> dot;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, a path, or a file name under the demos directory.
Json load_json(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '['))
    return json_io::parse_text(value);
  std::filesystem::path p(value);
  if (std::filesystem::exists(p)) return json_io::parse_text(read_file(p));
  std::filesystem::path d = std::filesystem::path(demos_dir()) / value;
  if (std::filesystem::exists(d)) return json_io::parse_text(read_file(d));
  throw UsageError("input not found: " + value);
}

std::optional<Field> explicit_field(const Config& c) {
  if (c.field.empty()) return std::nullopt;
  return Field::parse(c.field);
}

Field field_or(const Config& c, const std::string& fallback) {
  return Field::parse(c.field.empty() ? fallback : c.field);
}

FactorOptions factor_options(const Config& c) {
  FactorOptions opt;
  if (c.seed) opt.seed = *c.seed;
  return opt;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: " + text);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

Cocharacter cocharacter_arg(const Config& c, const Field& k) {
  if (!c.cocharacter.empty()) return json_io::cocharacter_from_json(k, load_json(c.cocharacter));
  if (!c.weights.empty()) return Cocharacter::diagonal(parse_int_list(c.weights));
  throw UsageError("give --cocharacter or --weights");
}

// --- poly -----------------------------------------------------------------

Poly poly_arg(const Config& c, Report& rep) {
  if (!c.input.empty()) {
    Json j = load_json(c.input);
    rep.data["poly"] = j;
    return json_io::poly_from_json(j, explicit_field(c));
  }
  if (c.poly.empty()) throw UsageError("give --poly or --input");
  Poly f = parse_poly(field_or(c, "Q"), c.poly);
  rep.data["poly"] = json_io::poly_to_json(f);
  return f;
}

Report poly_squarefree(const Config& c) {
  Report rep;
  Poly f = poly_arg(c, rep);
  FactorOptions opt = factor_options(c);
  rep.descriptor = f.field().descriptor();
  rep.seed = opt.seed;
  rep.body["polynomial"] = f.str();
  rep.body["squarefree"] = squarefree_test(f, opt);
  rep.body["separable"] = is_separable(f);
  rep.body["radical"] = radical(f, opt).str();
  return rep;
}

Report poly_factor(const Config& c) {
  Report rep;
  Poly f = poly_arg(c, rep);
  FactorOptions opt = factor_options(c);
  rep.descriptor = f.field().descriptor();
  rep.seed = opt.seed;
  rep.body["polynomial"] = f.str();
  rep.body["factorization"] = json_io::factor_to_json(factor(f, opt));
  return rep;
}

// --- endo -----------------------------------------------------------------

Matrix matrix_arg(const Config& c, Report& rep, const std::string& value) {
  Json j = load_json(value);
  Matrix m = json_io::matrix_from_json(j, explicit_field(c));
  rep.data["matrix"] = json_io::matrix_to_json(m);
  return m;
}

Matrix endo_input(const Config& c, Report& rep) {
  Matrix f = [&] {
    if (!c.matrix.empty()) return matrix_arg(c, rep, c.matrix);
    if (c.companion.empty()) throw UsageError("give --matrix or --companion");
    Poly mu = parse_poly(field_or(c, "Q"), c.companion);
    rep.data["companion"] = json_io::poly_to_json(mu);
    return Matrix::companion(mu.monic());
  }();
  if (!f.is_square()) fail(ErrorKind::DimensionMismatch, "endomorphisms are square matrices");
  rep.descriptor = f.field().descriptor();
  rep.seed = factor_options(c).seed;
  return f;
}

Report endo_analyze(const Config& c) {
  Report rep;
  Matrix f = endo_input(c, rep);
  FactorOptions opt = factor_options(c);
  ClosednessReport cr = is_cocharacter_closed(f, opt);
  rep.body["orbit_id"] = orbit_id(f);
  rep.body["cocharacter_closed"] = cr.closed;
  rep.body["geometrically_closed"] = is_geometrically_closed(f);
  rep.body["squarefree_min_poly"] = squarefree_test(min_poly(f), opt);
  rep.body["class"] = json_io::endo_class_to_json(invariant_factors(f));
  rep.body["certificate"] = json_io::closedness_to_json(cr);
  return rep;
}

Report endo_limit(const Config& c) {
  Report rep;
  Matrix f = endo_input(c, rep);
  Cocharacter lambda = cocharacter_arg(c, f.field());
  rep.data["cocharacter"] = json_io::cocharacter_to_json(lambda);
  if (lambda.rank() != f.rows()) fail(ErrorKind::DimensionMismatch, "cocharacter rank differs from the matrix size");
  ConjugationAction act(f.field(), f.rows());
  LimitResult r = limit(act.flatten(f), lambda, act);
  rep.body["exists"] = r.exists;
  rep.body["classification"] = limit_class_name(r.classification);
  rep.body["limit"] = r.value ? json_io::matrix_to_json(act.unflatten(*r.value)) : Json(nullptr);
  if (r.value) rep.body["limit_orbit_id"] = orbit_id(act.unflatten(*r.value));
  return rep;
}

Report endo_semisimplify(const Config& c) {
  Report rep;
  Matrix f = endo_input(c, rep);
  rep.body["orbit_id"] = orbit_id(f);
  rep.body["semisimplification"] = json_io::endo_class_to_json(semisimplification(f, factor_options(c)));
  return rep;
}

Report endo_witness(const Config& c) {
  Report rep;
  Matrix f = endo_input(c, rep);
  Witness w = witness_cocharacter(f, factor_options(c));
  rep.body["cocharacter"] = json_io::cocharacter_to_json(w.cocharacter);
  rep.body["limit"] = json_io::matrix_to_json(w.limit);
  rep.body["limit_orbit_id"] = orbit_id(w.limit);
  return rep;
}

Report endo_ru_conjugate(const Config& c) {
  Report rep;
  Matrix f = endo_input(c, rep);
  if (c.limit.empty()) throw UsageError("give --limit");
  Json lj = load_json(c.limit);
  Matrix target = json_io::matrix_from_json(lj, f.field());
  rep.data["limit"] = json_io::matrix_to_json(target);
  Cocharacter lambda = cocharacter_arg(c, f.field());
  rep.data["cocharacter"] = json_io::cocharacter_to_json(lambda);
  Matrix u = ru_conjugator(f, target, lambda);
  rep.body["conjugator"] = json_io::matrix_to_json(u);
  rep.body["membership"] = membership_name(p_lambda_membership(u, lambda));
  return rep;
}

// --- graph ----------------------------------------------------------------

Vec seed_point(const Config& c, const ActionModel& model, const Field& k, Report& rep) {
  if (c.seed_point.empty()) throw UsageError("give --seed-point");
  Vec v;
  if (model.name() == "rsquares") {
    v = {k.parse_element(c.seed_point)};
  } else if (model.name() == "fromf4") {
    const auto first = c.seed_point.find_first_not_of(' ');
    if (first != std::string::npos && c.seed_point[first] == '[') {
      v = json_io::vec_from_json(k, json_io::parse_text(c.seed_point));
    } else {
      std::istringstream ss(c.seed_point);
      std::string tok;
      while (std::getline(ss, tok, ',')) v.push_back(k.parse_element(tok));
    }
  } else if (model.name() == "tuple") {
    v = TupleConjugationAction(k, c.n, c.r).flatten(json_io::tuple_from_json(load_json(c.seed_point), k));
  } else {
    Matrix m = json_io::matrix_from_json(load_json(c.seed_point), k);
    v = model.name() == "pgl2" ? static_cast<const PGL2Model&>(model).pgl2().normalize(m) : m.entries();
  }
  if (v.size() != model.action().dimension())
    fail(ErrorKind::DimensionMismatch, "seed point has the wrong dimension for " + model.name());
  rep.data["seed_point"] = json_io::vec_to_json(v);
  return v;
}

// Model dimensions come from the seed when it is a matrix or tuple.
void infer_shape(Config& c) {
  if (c.seed_point.empty() || (c.model != "endo" && c.model != "tuple")) return;
  Json j = load_json(c.seed_point);
  if (c.model == "endo") {
    const Json& rows = j.is_array() ? j : j.at("rows");
    c.n = rows.size();
  } else {
    const Json& ms = j.at("matrices");
    c.r = ms.size();
    const Json& m0 = ms.at(0);
    c.n = (m0.is_array() ? m0 : m0.at("rows")).size();
  }
}

Field graph_field(const Config& c) { return field_or(c, c.model == "fromf4" ? "GF(5)" : "Q"); }

Report graph_access(Config c) {
  Report rep;
  infer_shape(c);
  Field k = graph_field(c);
  auto model = make_model(c.model, k, c.n, c.r, c.budget);
  Vec seed = seed_point(c, *model, k, rep);
  AccessibilityGraph g = accessibility_graph(seed, *model, c.budget, c.threads);
  rep.descriptor = k.descriptor();
  rep.body = json_io::graph_to_json(g);
  rep.dot = export_dot(g);
  return rep;
}

Report graph_antisymmetry(const Config& c) {
  Report rep;
  Field k = graph_field(c);
  if ((c.model == "endo" || c.model == "tuple") && c.n == 0) throw UsageError("give --n for this model");
  auto model = make_model(c.model, k, c.n, c.r, c.budget);
  rep.descriptor = k.descriptor();
  rep.data["model"] = c.model;
  rep.data["n"] = c.n;
  rep.data["r"] = c.r;
  rep.body = json_io::antisymmetry_to_json(check_antisymmetry(*model, c.budget));
  return rep;
}

// --- tuple ----------------------------------------------------------------

MatrixTuple tuple_arg(const Config& c, Report& rep) {
  if (c.tuple.empty()) throw UsageError("give --tuple");
  MatrixTuple t = json_io::tuple_from_json(load_json(c.tuple), explicit_field(c));
  rep.data["tuple"] = json_io::tuple_to_json(t);
  rep.descriptor = t.front().field().descriptor();
  rep.seed = c.seed.value_or(kDefaultTupleSeed);
  return t;
}

Report tuple_semisimple(const Config& c) {
  Report rep;
  MatrixTuple t = tuple_arg(c, rep);
  ModuleReport m = is_semisimple(t, rep.seed);
  rep.body = json_io::module_report_to_json(m);
  rep.body["semisimplification"] = json_io::tuple_to_json(semisimplify_tuple(t, rep.seed));
  return rep;
}

Report tuple_gcr(const Config& c) {
  Report rep;
  MatrixTuple t = tuple_arg(c, rep);
  ModuleReport m = gcr_over_k(t, rep.seed);
  rep.body = json_io::module_report_to_json(m);
  rep.body["gcr"] = m.semisimple;
  return rep;
}

// --- g2 -------------------------------------------------------------------

g2::Convention convention_arg(const std::string& text) {
  g2::Convention conv;
  if (text.size() != 4) throw UsageError("convention is four signs, e.g. ++-+");
  for (std::size_t i = 0; i < 4; ++i) {
    if (text[i] != '+' && text[i] != '-') throw UsageError("convention is four signs, e.g. ++-+");
    conv.signs[i] = text[i] == '+' ? 1 : -1;
  }
  return conv;
}

Field g2_field(const Config& c) {
  if (!c.field.empty()) return Field::parse(c.field);
  return c.p == 0 ? Field::rationals() : Field::prime(c.p);
}

Report g2_collect(const Config& c) {
  Report rep;
  Field k = g2_field(c);
  g2::RootSystem rs(convention_arg(c.convention));
  if (c.word.empty()) throw UsageError("give --word");
  g2::Word w = g2::Word::parse(k, c.word);
  g2::Strategy st = c.strategy == "rightmost" ? g2::Strategy::Rightmost : g2::Strategy::Leftmost;
  rep.descriptor = k.descriptor();
  rep.body["word"] = w.str();
  rep.body["collected"] = g2::collect(w, rs, g2::positive_roots(), st).str();
  rep.body["strategy"] = c.strategy;
  rep.body["convention"] = rs.convention().str();
  return rep;
}

Report g2_limit(const Config& c) {
  Report rep;
  Field k = g2_field(c);
  g2::RootSystem rs(convention_arg(c.convention));
  if (c.word.empty() || c.coroot.empty()) throw UsageError("give --word and --cocharacter");
  g2::Word w = g2::Word::parse(k, c.word);
  g2::Coroot lambda = g2::parse_coroot(c.coroot);
  auto lim = g2::word_limit(w, lambda, rs);
  rep.descriptor = k.descriptor();
  rep.body["word"] = w.str();
  rep.body["cocharacter"] = {lambda.x, lambda.y};
  rep.body["exists"] = lim.has_value();
  rep.body["limit"] = lim ? Json(lim->str()) : Json(nullptr);
  return rep;
}

Report g2_figure(const Config& c) {
  Report rep;
  if (c.p == 1) throw UsageError("--p is 0 or a prime");
  g2::RootSystem rs(convention_arg(c.convention));
  if (!rs.jacobi_holds()) fail(ErrorKind::InvalidConvention, "structure constants fail the Jacobi identity");
  auto edges = g2::figure_edges(c.p, rs);
  rep.descriptor = c.p == 0 ? "Q" : "GF(" + std::to_string(c.p) + ")";
  rep.body = json_io::figure_edges_to_json(c.p, edges, rs);
  rep.dot = g2::figure_dot(c.p, edges);
  return rep;
}

// --- demos ----------------------------------------------------------------

Report demo_rsquares(const Config&) {
  Report rep;
  Field q = Field::rationals();
  RSquaresModel model(q);
  rep.descriptor = q.descriptor();
  Json graphs = Json::object();
  for (const char* s : {"1", "-1"}) graphs[s] = json_io::graph_to_json(accessibility_graph({q.parse_element(s)}, model));
  rep.body["graphs"] = graphs;
  rep.body["closure_of_orbit_1"] = {model.orbit_id({q.from_int(1)}), model.orbit_id({q.zero()})};
  rep.body["distinct"] = model.orbit_id({q.from_int(1)}) != model.orbit_id({q.from_int(-1)});
  rep.body["minimal"] = graphs["1"]["minimal"];
  return rep;
}

Report demo_pgl2(const Config&) {
  Report rep;
  Field k = Field::parse("Fp(t):p=2");
  Field kx = Field::parse("ext(Fp(t):p=2;x^2-t;x)");
  rep.descriptor = k.descriptor();
  const std::vector<std::vector<std::string>> rows{{"0", "1"}, {"t", "0"}};
  auto run_over = [&](const Field& f) {
    PGL2Model model(f);
    Vec v = model.pgl2().normalize(Matrix::parse(f, rows));
    Json j;
    j["descriptor"] = f.descriptor();
    j["orbit"] = model.orbit_id(v);
    auto root = is_nth_power(f.parse_element("t"), 2);
    j["is_nth_power(t,2)"] = root ? Json(root->str()) : Json(nullptr);
    j["one_step_limits"] = Json::array();
    for (const auto& l : one_step_limits(v, model))
      j["one_step_limits"].push_back({{"target", l.target}, {"cocharacter", json_io::cocharacter_to_json(l.witness)},
                                      {"proper", l.target != j["orbit"].get<std::string>()}});
    return j;
  };
  rep.data["point"] = rows;
  rep.body["over_k"] = run_over(k);
  rep.body["over_k_x"] = run_over(kx);
  return rep;
}

Report demo_fromf4(const Config& c) {
  Report rep;
  const std::uint64_t p = c.p == 0 ? 5 : c.p;
  FromF4Model model(p);
  Field k = model.action().field();
  rep.descriptor = k.descriptor();
  auto pt = [&](std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.push_back(k.from_int(x));
    return v;
  };
  const Vec v = pt({0, 1, 0, 1, 0});  // xy + e1
  const Cocharacter lambda = Cocharacter::diagonal({1, 0});
  const Cocharacter sigma = Cocharacter::diagonal({-1, 1});  // mu - lambda
  LimitResult l1 = limit(v, lambda, model.action());
  Matrix u = Matrix::parse(k, {{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  Vec moved = model.action().act(u, *l1.value, false);
  LimitResult l2 = limit(moved, sigma, model.action());
  const std::string v_id = model.orbit_id(v), v1_id = model.orbit_id(*l1.value), v2_id = model.orbit_id(*l2.value);
  Json chain = Json::array();
  chain.push_back({{"point", model.describe(v)}, {"orbit", v_id}});
  chain.push_back({{"point", model.describe(*l1.value)}, {"orbit", v1_id}, {"cocharacter", lambda.weights}});
  chain.push_back({{"moved", model.describe(moved)},
                   {"point", model.describe(*l2.value)},
                   {"orbit", v2_id},
                   {"cocharacter", sigma.weights}});
  rep.body["chain"] = chain;
  Json one = Json::array();
  bool v2_in_one_step = false;
  for (const auto& l : one_step_limits(v, model)) {
    one.push_back(l.target);
    v2_in_one_step = v2_in_one_step || l.target == v2_id;
  }
  rep.body["one_step_from_v"] = one;
  AccessibilityGraph g = accessibility_graph(v, model, c.budget, c.threads);
  rep.body["v2_one_step_from_v"] = v2_in_one_step;
  rep.body["v2_two_step_from_v"] = g.has_edge(v_id, v1_id) && g.has_edge(v1_id, v2_id);
  rep.body["orbit_count"] = model.orbit_count();
  rep.body["group_order"] = model.group_order();
  rep.body["graph"] = json_io::graph_to_json(g);
  return rep;
}

Report demo_insepext(const Config& c) {
  Report rep;
  FactorOptions opt = factor_options(c);
  Field k = Field::parse("Fp(t):p=2");
  rep.descriptor = k.descriptor();
  rep.seed = opt.seed;
  const std::string mu = "T^12+t";
  Matrix f = Matrix::companion(parse_poly(k, mu));
  rep.data["min_poly"] = mu;
  rep.body["k"] = {{"descriptor", k.descriptor()},
                   {"cocharacter_closed", is_cocharacter_closed(f, opt).closed},
                   {"geometrically_closed", is_geometrically_closed(f)},
                   {"factorization", factor(parse_poly(k, mu), opt).str()}};
  Field ks = Field::parse("ext(ext(Fp(t):p=2;s^3-t;s);z^2+z+1;z)");
  Matrix fs = f.embed(ks);
  rep.body["k_s_zeta"] = {{"descriptor", ks.descriptor()},
                          {"cocharacter_closed", is_cocharacter_closed(fs, opt).closed},
                          {"factorization", factor(min_poly(fs), opt).str()}};
  // c = a^2 with a^4 = s.
  Field ka = Field::parse("ext(ext(Fp(t):p=2;s^3-t;s);c^2-s;c)");
  Matrix fa = f.embed(ka);
  Matrix block = Matrix::parse(ka, {{"0", "c", "0", "c"}, {"1", "0", "0", "0"}, {"0", "0", "0", "c"}, {"0", "0", "1", "0"}});
  Cocharacter kill = Cocharacter::diagonal({1, 1, 0, 0});
  auto lim = conjugation_limit(block, kill);
  ClosednessReport whole = is_cocharacter_closed(fa, opt);
  rep.body["k_a2"] = {{"descriptor", ka.descriptor()},
                      {"factorization", factor(min_poly(fa), opt).str()},
                      {"cocharacter_closed", whole.closed},
                      {"certificate", json_io::closedness_to_json(whole)},
                      {"block", json_io::matrix_to_json(block)},
                      {"block_orbit_id", orbit_id(block)},
                      {"block_cocharacter_closed", is_cocharacter_closed(block, opt).closed},
                      {"destabilizer", json_io::cocharacter_to_json(kill)},
                      {"limit", lim ? json_io::matrix_to_json(*lim) : Json(nullptr)},
                      {"limit_min_poly", lim ? Json(min_poly(*lim).str()) : Json(nullptr)}};
  return rep;
}

// --- output ---------------------------------------------------------------

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) render_text(val, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

using Handler = Report (*)(const Config&);

Report graph_access_handler(const Config& c) { return graph_access(c); }

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"poly squarefree", poly_squarefree},   {"poly factor", poly_factor},
      {"endo analyze", endo_analyze},         {"endo limit", endo_limit},
      {"endo semisimplify", endo_semisimplify}, {"endo witness", endo_witness},
      {"endo ru-conjugate", endo_ru_conjugate}, {"graph access", graph_access_handler},
      {"graph antisymmetry", graph_antisymmetry}, {"tuple semisimple", tuple_semisimple},
      {"tuple gcr", tuple_gcr},               {"g2 limit", g2_limit},
      {"g2 collect", g2_collect},             {"g2 figure", g2_figure},
      {"demo rsquares", demo_rsquares},       {"demo pgl2", demo_pgl2},
      {"demo fromf4", demo_fromf4},           {"demo insepext", demo_insepext},
  };
  return table;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--field", c.field, "field descriptor, e.g. Q, GF(3^2), Fp(t):p=2");
  sub->add_option("--budget-flags", c.budget, "enumeration budget")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "dot", "text"}));
  sub->add_option("--threads", c.threads, "worker threads for graph search")->check(CLI::PositiveNumber);
}

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, Config& c) {
  CLI::App* sub = parent->add_subcommand(name, help);
  add_common(sub, c);
  const std::string full = parent->get_name() + " " + name;
  sub->callback([&c, full] { c.command = full; });
  return sub;
}

}  // namespace

std::string demos_dir() {
  if (const char* env = std::getenv("CCC_DEMOS_DIR")) return env;
  return CCC_DEMO_DIR;
}

std::string dot_body(const std::string& dot_report) {
  std::istringstream in(dot_report);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("// ", 0) != 0) out += line + "\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Cocharacter-closed orbits: limits, accessibility graphs and G2 root groups", "ccc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", json_io::kToolVersion);

  CLI::App* poly = app.add_subcommand("poly", "polynomial tools")->require_subcommand(1);
  for (const char* name : {"squarefree", "factor"}) {
    auto* s = leaf(poly, name, "", c);
    s->add_option("--poly", c.poly, "polynomial literal in T");
    s->add_option("--input", c.input, "polynomial JSON (file or inline)");
  }
  CLI::App* endo = app.add_subcommand("endo", "endomorphism orbits")->require_subcommand(1);
  for (const char* name : {"analyze", "limit", "semisimplify", "witness", "ru-conjugate"}) {
    auto* s = leaf(endo, name, "", c);
    s->add_option("--matrix", c.matrix, "matrix JSON (file or inline)");
    s->add_option("--companion", c.companion, "use the companion matrix of this monic polynomial");
    if (std::string(name) == "limit" || std::string(name) == "ru-conjugate") {
      s->add_option("--cocharacter", c.cocharacter, "cocharacter JSON (file or inline)");
      s->add_option("--weights", c.weights, "diagonal weights, comma separated");
    }
    if (std::string(name) == "ru-conjugate") s->add_option("--limit", c.limit, "limit matrix JSON")->required();
  }
  CLI::App* graph = app.add_subcommand("graph", "accessibility graphs")->require_subcommand(1);
  for (const char* name : {"access", "antisymmetry"}) {
    auto* s = leaf(graph, name, "", c);
    s->add_option("--model", c.model, "action model")
        ->required()
        ->check(CLI::IsMember({"endo", "tuple", "rsquares", "fromf4", "pgl2"}));
    if (std::string(name) == "access") s->add_option("--seed-point", c.seed_point, "start point")->required();
    s->add_option("--n", c.n, "matrix size");
    s->add_option("--r", c.r, "tuple length");
  }
  CLI::App* tuple = app.add_subcommand("tuple", "tuples of matrices")->require_subcommand(1);
  for (const char* name : {"semisimple", "gcr"}) {
    auto* s = leaf(tuple, name, "", c);
    s->add_option("--tuple", c.tuple, "tuple JSON (file or inline)")->required();
  }
  CLI::App* g2c = app.add_subcommand("g2", "G2 root groups")->require_subcommand(1);
  for (const char* name : {"limit", "collect", "figure"}) {
    auto* s = leaf(g2c, name, "", c);
    s->add_option("--p", c.p, "characteristic (0 for Q)");
    s->add_option("--convention", c.convention, "signs on the extraspecial pairs");
    if (std::string(name) != "figure") {
      s->add_option("--word", c.word, "word such as u(a;1)*u(b;-1)")->required();
      s->add_option("--strategy", c.strategy, "collection order")->check(CLI::IsMember({"leftmost", "rightmost"}));
    }
    if (std::string(name) == "limit") s->add_option("--cocharacter", c.coroot, "coroot name or x,y")->required();
  }
  CLI::App* demo = app.add_subcommand("demo", "scripted examples")->require_subcommand(1);
  for (const char* name : {"rsquares", "pgl2", "fromf4", "insepext"}) {
    auto* s = leaf(demo, name, "", c);
    if (std::string(name) == "fromf4") s->add_option("--p", c.p, "prime");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Json inputs;
  inputs["command"] = c.command;
  inputs["argv"] = args;
  const bool dot_command = c.command == "graph access" || c.command == "g2 figure";
  if (c.format.empty()) c.format = c.command == "g2 figure" ? "dot" : "json";
  if (c.format == "dot" && !dot_command) {
    err << "DOT output is available for graph access and g2 figure only\n";
    return kExitUsage;
  }
  std::string text;
  try {
    Report rep = handlers().at(c.command)(c);
    inputs["data"] = rep.data;
    if (rep.descriptor.empty()) rep.descriptor = c.field;
    rep.seed = c.seed.value_or(rep.seed);
    Json env = json_io::envelope(inputs, rep.descriptor, rep.seed, rep.body);
    if (c.format == "dot") {
      Json head = env;
      head.erase("report");
      text = "// envelope: " + head.dump() + "\n" + *rep.dot;
    } else if (c.format == "text") {
      std::ostringstream os;
      render_text(env, "", os);
      text = os.str();
    } else {
      text = env.dump(2) + "\n";
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    out << json_io::error_object(error_kind_name(e.kind()), e.what(), inputs).dump(2) << "\n";
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    out << json_io::error_object("SyntaxError", e.what(), inputs).dump(2) << "\n";
    return kExitDomain;
  }
  out << text << std::flush;
  return kExitOk;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ccc::cli
