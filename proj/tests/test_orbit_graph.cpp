#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>

#include "ccc/json_io.hpp"
#include "ccc/models.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace ccc;

namespace {

Matrix M(const Field& k, std::vector<std::vector<std::string>> rows) { return Matrix::parse(k, rows); }

json_io::Json fixture(const std::string& name) {
  std::ifstream in(std::string(CCC_TEST_DEMO_DIR) + "/" + name);
  return json_io::Json::parse(in);
}

Vec point(const Field& k, const json_io::Json& j) {
  Vec v;
  for (const auto& x : j) v.push_back(k.from_int(x.get<int>()));
  return v;
}

std::set<std::string> targets(const Vec& v, const ActionModel& model) {
  std::set<std::string> out;
  for (const auto& l : one_step_limits(v, model)) out.insert(l.target);
  return out;
}

// Every witness reproduces its target through the limit engine.
void expect_witnesses_reproduce(const Vec& v, const ActionModel& model) {
  for (const auto& l : one_step_limits(v, model)) {
    LimitResult r = limit(v, l.witness, model.action());
    ASSERT_TRUE(r.exists) << model.describe(v) << " along " << l.witness.str();
    EXPECT_EQ(*r.value, l.point);
    EXPECT_EQ(model.orbit_id(*r.value), l.target);
  }
}

}  // namespace

TEST(OrbitGraph, OneStepLimitsOfNilpotentJordanBlock) {
  Field k = Field::prime(2);
  EndoModel model(k, 2);
  Matrix j2 = M(k, {{"0", "1"}, {"0", "0"}});
  EXPECT_EQ(targets(j2.entries(), model), (std::set<std::string>{orbit_id(j2), orbit_id(Matrix(k, 2, 2))}));
  expect_witnesses_reproduce(j2.entries(), model);
}

TEST(OrbitGraph, DiagonalWithDistinctEigenvaluesOnlyReachesItself) {
  Field k = Field::prime(3);
  EndoModel model(k, 2);
  Matrix d = M(k, {{"1", "0"}, {"0", "2"}});
  EXPECT_EQ(targets(d.entries(), model), std::set<std::string>{orbit_id(d)});
}

TEST(OrbitGraph, FromF4OneStepLimitsMatchFrozenEnumeration) {
  FromF4Model model(5);
  const auto fx = fixture("fromf4_F5.expected.json");
  const Field& k = model.field();
  EXPECT_EQ(model.group_order(), fx["group_order"].get<std::size_t>());
  EXPECT_EQ(model.orbit_count(), fx["orbit_count"].get<std::size_t>());
  for (const char* from : {"v", "v1"}) {
    std::set<std::string> expected;
    for (const auto& p : fx[std::string("one_step_from_") + from]) expected.insert(model.orbit_id(point(k, p)));
    const Vec v = point(k, fx["points"][from]);
    EXPECT_EQ(targets(v, model), expected) << from;
    expect_witnesses_reproduce(v, model);
  }
  const Vec v = point(k, fx["points"]["v"]);
  const std::string v1 = model.orbit_id(point(k, fx["points"]["v1"])), v2 = model.orbit_id(point(k, fx["points"]["v2"]));
  EXPECT_EQ(targets(v, model).count(v1), 1u);
  EXPECT_EQ(targets(v, model).count(v2), 0u);
}

TEST(OrbitGraph, FromF4OneStepAccessibilityIsNotTransitive) {
  FromF4Model model(5);
  const Field& k = model.field();
  const auto fx = fixture("fromf4_F5.expected.json");
  const Vec v = point(k, fx["points"]["v"]);
  AccessibilityGraph g = accessibility_graph(v, model);
  const std::string a = model.orbit_id(v), b = model.orbit_id(point(k, fx["points"]["v1"])),
                    c = model.orbit_id(point(k, fx["points"]["v2"]));
  EXPECT_TRUE(g.has_edge(a, b));
  EXPECT_TRUE(g.has_edge(b, c));
  EXPECT_FALSE(g.has_edge(a, c));
  const std::string dot = export_dot(g);
  EXPECT_NE(dot.find(a), std::string::npos);
  EXPECT_NE(dot.find(c), std::string::npos);
}

TEST(OrbitGraph, FromF4ActionAxioms) {
  FromF4Model model(5);
  const FromF4Action& act = static_cast<const FromF4Action&>(model.action());
  const auto points = *model.all_points();
  Matrix id = Matrix::identity(model.field(), 3);
  for (std::size_t i = 0; i < points.size(); i += 97) {
    EXPECT_EQ(act.act(id, points[i], false), points[i]);
    for (std::size_t a = 0; a < model.group_order(); a += 53)
      for (std::size_t b = 0; b < model.group_order(); b += 71) {
        Matrix ga = model.group_matrix(a), gb = model.group_matrix(b);
        EXPECT_EQ(act.act(ga * gb, points[i], false), act.act(ga, act.act(gb, points[i], false), false));
        EXPECT_EQ(model.orbit_id(act.act(ga, points[i], false)), model.orbit_id(points[i]));
      }
  }
}

TEST(OrbitGraph, LineModelClosureOfOne) {
  Field q = Field::rationals();
  RSquaresModel model(q);
  AccessibilityGraph g = accessibility_graph({q.one()}, model);
  ASSERT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(g.nodes[0].id, model.orbit_id({q.one()}));
  EXPECT_EQ(*g.minimal, model.orbit_id({q.zero()}));
  // 4 = 2^2 shares the orbit of 1; 2 does not.
  EXPECT_EQ(model.orbit_id({q.from_int(4)}), model.orbit_id({q.one()}));
  EXPECT_NE(model.orbit_id({q.from_int(2)}), model.orbit_id({q.one()}));
}

TEST(OrbitGraph, FixedPointGivesSingleNode) {
  Field k = Field::prime(2);
  EndoModel model(k, 2);
  AccessibilityGraph g = accessibility_graph(Matrix::identity(k, 2).entries(), model);
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_EQ(*g.minimal, g.nodes[0].id);
}

TEST(OrbitGraph, NilpotentJ3ChainOverF2) {
  Field k = Field::prime(2);
  EndoModel model(k, 3);
  Matrix j3 = M(k, {{"0", "1", "0"}, {"0", "0", "1"}, {"0", "0", "0"}});
  Matrix j2 = M(k, {{"0", "1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
  AccessibilityGraph g = accessibility_graph(j3.entries(), model);
  std::set<std::string> ids;
  for (const auto& n : g.nodes) ids.insert(n.id);
  EXPECT_EQ(ids, (std::set<std::string>{orbit_id(j3), orbit_id(j2), orbit_id(Matrix(k, 3, 3))}));
  EXPECT_TRUE(g.has_edge(orbit_id(j2), orbit_id(Matrix(k, 3, 3))));
  EXPECT_EQ(*g.minimal, orbit_id(Matrix(k, 3, 3)));
}

TEST(OrbitGraph, MinimalOrbitExamples) {
  Field f2 = Field::prime(2), f5 = Field::prime(5);
  EndoModel m2(f2, 2), m5(f5, 3);
  EXPECT_EQ(*accessibility_graph(M(f2, {{"0", "1"}, {"0", "0"}}).entries(), m2).minimal, orbit_id(Matrix(f2, 2, 2)));
  Matrix c = Matrix::companion(parse_poly(f5, "(T-1)^2*(T-2)"));
  EXPECT_EQ(*accessibility_graph(c.entries(), m5).minimal, semisimplification(c).id());
  Matrix closed = M(f2, {{"0", "1"}, {"1", "1"}});
  EXPECT_EQ(*accessibility_graph(closed.entries(), m2).minimal, orbit_id(closed));
}

TEST(OrbitGraph, MinimalOrbitRejectsAmbiguousGraphs) {
  AccessibilityGraph g;
  g.nodes = {{"a", {}, "a"}, {"b", {}, "b"}};
  try {
    minimal_orbit(g);
    FAIL() << "two sinks accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUniqueMinimal);
  }
}

TEST(OrbitGraph, UniqueMinimalOrbitOverF2) {
  props::Tally t = props::unique_minimal_orbit(Field::prime(2), 2);
  EXPECT_TRUE(t.clean()) << t.summary();
}

TEST(OrbitGraph, SuccessorClosedSetsAreHitInOneStep) {
  Field k = Field::prime(2);
  EndoModel model(k, 3);
  for (const char* seed : {"J3", "J2", "mixed"}) {
    Matrix f = std::string(seed) == "J3"   ? M(k, {{"0", "1", "0"}, {"0", "0", "1"}, {"0", "0", "0"}})
               : std::string(seed) == "J2" ? M(k, {{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "0"}})
                                           : M(k, {{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}});
    AccessibilityGraph g = accessibility_graph(f.entries(), model);
    ASSERT_LE(g.nodes.size(), 12u);
    const auto one = targets(f.entries(), model);
    for (std::uint32_t mask = 1; mask < (1u << g.nodes.size()); ++mask) {
      std::set<std::string> x;
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (mask >> i & 1) x.insert(g.nodes[i].id);
      bool closed = true;
      for (const auto& e : g.edges)
        if (x.count(e.from) && !x.count(e.to)) closed = false;
      if (!closed) continue;
      bool hit = false;
      for (const auto& t : one) hit = hit || x.count(t);
      EXPECT_TRUE(hit) << seed << " mask " << mask;
    }
  }
}

TEST(OrbitGraph, AccessibilityIsTransitiveAndMinimalOrbitsAgreeAlongIt) {
  Field k = Field::prime(2);
  EndoModel model(k, 3);
  for (const auto& f : oracle::all_matrices(k, 3)) {
    if (f(2, 0).is_one() || f(1, 0).is_one()) continue;  // upper-triangular corpus keeps the run short
    AccessibilityGraph g = accessibility_graph(f.entries(), model);
    for (const auto& n : g.nodes) {
      AccessibilityGraph sub = accessibility_graph(n.representative, model);
      EXPECT_EQ(sub.minimal, g.minimal);
      for (const auto& m : sub.nodes) EXPECT_NE(g.find(m.id), nullptr);
    }
  }
}

TEST(OrbitGraph, OrbitDimensionDropsAlongEdges) {
  Field k = Field::prime(3);
  EndoModel model(k, 3);
  std::mt19937_64 rng(71);
  for (int i = 0; i < 40; ++i) {
    Matrix f = oracle::random_matrix(k, 3, rng, 0.5);
    AccessibilityGraph g = accessibility_graph(f.entries(), model);
    for (const auto& e : g.edges)
      EXPECT_GT(commutant_dimension(Matrix(k, 3, 3, g.find(e.to)->representative)),
                commutant_dimension(Matrix(k, 3, 3, g.find(e.from)->representative)));
  }
}

TEST(OrbitGraph, AntisymmetryOfEndomorphismOrbits) {
  for (std::size_t n : {2u, 3u}) {
    AntisymmetryReport r = check_antisymmetry(EndoModel(Field::prime(2), n));
    EXPECT_TRUE(r.antisymmetric()) << n;
    EXPECT_EQ(r.points, n == 2 ? 16u : 512u);
  }
  // The identity of GL_1 is a single orbit closed under its limits.
  Field f2 = Field::prime(2);
  AntisymmetryReport single = check_antisymmetry(EndoModel(f2, 1), kDefaultBudget, std::vector<Vec>{{f2.one()}});
  EXPECT_TRUE(single.antisymmetric());
  EXPECT_EQ(single.orbits, 1u);
}

TEST(OrbitGraph, AntisymmetryReportsEnumerationBudget) {
  try {
    check_antisymmetry(EndoModel(Field::prime(2), 3), 100);
    FAIL() << "budget ignored";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnumerationBudgetExceeded);
  }
}

TEST(OrbitGraph, PGL2SeedIsClosedOverKButNotOverKx) {
  const std::vector<std::vector<std::string>> rows{{"0", "1"}, {"t", "0"}};
  Field k = Field::parse("Fp(t):p=2");
  PGL2Model over_k(k);
  Vec v = over_k.pgl2().normalize(Matrix::parse(k, rows));
  EXPECT_FALSE(is_nth_power(k.parse_element("t"), 2).has_value());
  EXPECT_EQ(targets(v, over_k), std::set<std::string>{over_k.orbit_id(v)});

  Field kx = Field::parse("ext(Fp(t):p=2;x^2-t;x)");
  PGL2Model over_kx(kx);
  Vec w = over_kx.pgl2().normalize(Matrix::parse(kx, rows));
  ASSERT_TRUE(is_nth_power(kx.parse_element("t"), 2).has_value());
  auto ts = targets(w, over_kx);
  EXPECT_GT(ts.size(), 1u);
  expect_witnesses_reproduce(w, over_kx);
  // The proper limit is the class of zero: [[0,1],[t,0]] ~ [[x,1],[0,x]] modulo scalars.
  EXPECT_EQ(ts.count(over_kx.orbit_id(Vec(4, kx.zero()))), 1u);
}

TEST(OrbitGraph, ThreadedSearchIsDeterministic) {
  FromF4Model model(5);
  const Field& k = model.field();
  Vec v{k.zero(), k.one(), k.zero(), k.one(), k.zero()};
  const auto serial = json_io::graph_to_json(accessibility_graph(v, model, kDefaultBudget, 1)).dump();
  for (unsigned threads : {2u, 4u, 8u})
    EXPECT_EQ(json_io::graph_to_json(accessibility_graph(v, model, kDefaultBudget, threads)).dump(), serial);
  EndoModel endo(Field::prime(2), 3);
  Matrix j3 = Matrix::parse(Field::prime(2), {{"0", "1", "0"}, {"0", "0", "1"}, {"0", "0", "0"}});
  EXPECT_EQ(json_io::graph_to_json(accessibility_graph(j3.entries(), endo, kDefaultBudget, 4)).dump(),
            json_io::graph_to_json(accessibility_graph(j3.entries(), endo, kDefaultBudget, 1)).dump());
}

TEST(OrbitGraph, GraphJsonRoundTrip) {
  Field k = Field::prime(2);
  EndoModel model(k, 3);
  Matrix j3 = Matrix::parse(k, {{"0", "1", "0"}, {"0", "0", "1"}, {"0", "0", "0"}});
  AccessibilityGraph g = accessibility_graph(j3.entries(), model);
  const auto j = json_io::graph_to_json(g);
  AccessibilityGraph back = json_io::graph_from_json(k, j);
  EXPECT_EQ(json_io::graph_to_json(back), j);
  EXPECT_EQ(export_dot(back), export_dot(g));
}

TEST(OrbitGraph, DotExport) {
  AccessibilityGraph empty;
  const std::string e = export_dot(empty);
  EXPECT_EQ(e.rfind("digraph", 0), 0u);
  EXPECT_NE(e.find('}'), std::string::npos);

  Field k = Field::prime(2);
  EndoModel model(k, 2);
  AccessibilityGraph g = accessibility_graph(Matrix::parse(k, {{"0", "1"}, {"0", "0"}}).entries(), model);
  const std::string dot = export_dot(g);
  EXPECT_EQ(dot, export_dot(g));
  std::size_t arrows = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++arrows;
  EXPECT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(arrows, 1u);
}
