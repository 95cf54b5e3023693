#include <gtest/gtest.h>

#include <random>

#include "ccc/json_io.hpp"
#include "ccc/models.hpp"
#include "oracles.hpp"

using namespace ccc;

namespace {

Matrix M(const Field& k, std::vector<std::vector<std::string>> rows) { return Matrix::parse(k, rows); }

// Dimension of the unital algebra spanned by all words of length <= max_len.
std::size_t word_closure_dimension(const MatrixTuple& t, std::size_t max_len) {
  const Field& k = t.front().field();
  const std::size_t n = t.front().rows();
  std::vector<Matrix> layer{Matrix::identity(k, n)}, all = layer;
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<Matrix> next;
    for (const auto& w : layer)
      for (const auto& g : t) next.push_back(w * g);
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<Vec> rows;
  for (const auto& m : all) rows.push_back(m.entries());
  return rank(Matrix::from_rows(k, rows));
}

MatrixTuple pair_from_code(const std::vector<Matrix>& all, std::size_t code) {
  return {all[code % all.size()], all[code / all.size()]};
}

}  // namespace

TEST(TupleLab, EnvelopingBasisExamples) {
  Field q = Field::rationals();
  EXPECT_EQ(enveloping_basis({Matrix::identity(q, 3)}).size(), 1u);
  EXPECT_EQ(enveloping_basis({M(q, {{"0", "1"}, {"0", "0"}})}).size(), 2u);
  MatrixTuple s3{M(q, {{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}),
                 M(q, {{"0", "0", "1"}, {"1", "0", "0"}, {"0", "1", "0"}})};
  const std::size_t oracle_dim = word_closure_dimension(s3, 6);
  EXPECT_EQ(oracle_dim, 5u);
  EXPECT_EQ(enveloping_basis(s3).size(), oracle_dim);
}

TEST(TupleLab, EnvelopingDimensionMatchesWordClosure) {
  std::mt19937_64 rng(73);
  for (const char* d : {"GF(2)", "GF(3)", "Q"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 20; ++i) {
      const std::size_t n = 2 + i % 2;
      MatrixTuple t{oracle::random_matrix(k, n, rng, 0.5), oracle::random_matrix(k, n, rng, 0.5)};
      EXPECT_EQ(enveloping_basis(t).size(), word_closure_dimension(t, n * n));
    }
  }
}

TEST(TupleLab, SemisimplicityExamples) {
  Field f2 = Field::prime(2), q = Field::rationals();
  ModuleReport j = is_semisimple({M(q, {{"0", "1"}, {"0", "0"}})});
  EXPECT_FALSE(j.semisimple);
  EXPECT_EQ(j.radical_dimension, 1u);
  MatrixTuple upper{M(f2, {{"1", "1"}, {"0", "1"}}), M(f2, {{"1", "0"}, {"0", "1"}})};
  EXPECT_FALSE(is_semisimple(upper).semisimple);
  EXPECT_TRUE(is_semisimple({M(f2, {{"0", "1"}, {"1", "1"}})}).semisimple);
}

TEST(TupleLab, ReportInvariants) {
  std::mt19937_64 rng(79);
  for (const char* d : {"GF(2)", "GF(3)", "Q"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 30; ++i) {
      const std::size_t n = 1 + i % 3;
      MatrixTuple t{oracle::random_matrix(k, n, rng, 0.6), oracle::random_matrix(k, n, rng, 0.6)};
      ModuleReport r = is_semisimple(t, 1234);
      EXPECT_EQ(r.radical_dimension == 0, r.semisimple);
      std::size_t total = 0;
      for (const auto& f : r.factors) total += f.dimension;
      EXPECT_EQ(total, n);
      EXPECT_EQ(r.seed, 1234u);
      // Deterministic for a fixed seed.
      EXPECT_EQ(is_semisimple(t, 1234).semisimple, r.semisimple);
    }
  }
}

TEST(TupleLab, SemisimplicityAgreesWithSubspaceEnumeration) {
  for (std::uint64_t p : {2u, 3u}) {
    Field k = Field::prime(p);
    const auto all = oracle::all_matrices(k, 2);
    for (std::size_t code = 0; code < all.size() * all.size(); ++code) {
      MatrixTuple t = pair_from_code(all, code);
      EXPECT_EQ(is_semisimple(t).semisimple, oracle::semisimple_by_subspaces(t)) << t[0].str() << t[1].str();
    }
  }
  for (const auto& f : oracle::all_matrices(Field::prime(2), 3))
    EXPECT_EQ(is_semisimple({f}).semisimple, oracle::semisimple_by_subspaces({f})) << f.str();
}

TEST(TupleLab, CharacteristicZeroRadicalMatchesReductionModP) {
  // Integer tuples whose reductions mod 5 keep the algebra dimension.
  Field q = Field::rationals(), f5 = Field::prime(5);
  std::mt19937_64 rng(83);
  std::uniform_int_distribution<int> entry(-2, 2);
  int compared = 0;
  for (int i = 0; i < 60; ++i) {
    Matrix a(q, 2, 2), b(q, 2, 2), a5(f5, 2, 2), b5(f5, 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        int x = entry(rng), y = r > c ? 0 : entry(rng);
        a(r, c) = q.from_int(x), a5(r, c) = f5.from_int(x);
        b(r, c) = q.from_int(y), b5(r, c) = f5.from_int(y);
      }
    if (enveloping_basis({a, b}).size() != enveloping_basis({a5, b5}).size()) continue;
    if (rank(a) != rank(a5) || rank(a - b) != rank(a5 - b5)) continue;
    ++compared;
    EXPECT_EQ(trace_form_radical_dimension({a, b}) == 0, oracle::semisimple_by_subspaces({a5, b5}))
        << a.str() << " " << b.str();
  }
  EXPECT_GT(compared, 10);
}

TEST(TupleLab, GcrExamples) {
  Field f2 = Field::prime(2), q = Field::rationals();
  EXPECT_FALSE(gcr_over_k({M(f2, {{"1", "1"}, {"0", "1"}})}).semisimple);
  EXPECT_TRUE(gcr_over_k({M(q, {{"2", "0"}, {"0", "1"}}), M(q, {{"1", "0"}, {"0", "3"}})}).semisimple);
  MatrixTuple s3{M(q, {{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}),
                 M(q, {{"0", "0", "1"}, {"1", "0", "0"}, {"0", "1", "0"}})};
  ModuleReport r = gcr_over_k(s3);
  EXPECT_TRUE(r.semisimple);
  EXPECT_EQ(trace_form_radical_dimension(s3), 0u);
  EXPECT_THROW(gcr_over_k({Matrix(q, 2, 2)}), Error);
}

TEST(TupleLab, SemisimpleTuplesHaveNoProperOneStepLimit) {
  Field k = Field::prime(2);
  TupleModel model(k, 2, 2);
  const auto all = oracle::all_matrices(k, 2);
  const TupleConjugationAction act(k, 2, 2);
  for (std::size_t code = 0; code < all.size() * all.size(); ++code) {
    MatrixTuple t = pair_from_code(all, code);
    const Vec v = act.flatten(t);
    bool proper = false;
    for (const auto& l : one_step_limits(v, model)) proper = proper || l.target != model.orbit_id(v);
    EXPECT_EQ(is_semisimple(t).semisimple, !proper) << t[0].str() << t[1].str();
    if (rank(t[0]) == 2 && rank(t[1]) == 2) EXPECT_EQ(gcr_over_k(t).semisimple, !proper);
  }
}

TEST(TupleLab, ExtensionPointExamples) {
  Field q = Field::rationals();
  Vec v{q.from_int(3), q.from_int(-1)};
  auto same = tuple_from_extension_point(v, {q.one()}, q);
  ASSERT_EQ(same.size(), 1u);
  EXPECT_EQ(same[0], v);

  Field qi = Field::parse("ext(Q;i^2+1;i)");
  Vec w{qi.parse_element("1+i"), qi.parse_element("2")};
  auto split = tuple_from_extension_point(w, {qi.one(), qi.gen()}, q);
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split[0], (Vec{q.one(), q.from_int(2)}));
  EXPECT_EQ(split[1], (Vec{q.one(), q.zero()}));

  EXPECT_THROW(tuple_from_extension_point(w, {qi.one(), qi.one()}, q), Error);
}

TEST(TupleLab, ExtensionPointLimitsAndStabilizersAgree) {
  Field f2 = Field::prime(2), f4 = Field::finite(2, 2);
  const std::vector<Elem> basis{f4.one(), f4.gen()};
  const auto group = oracle::general_linear_group(f2, 2);
  StandardAction on_v(f4, 2), on_tuple(f2, 2, 2);
  const Cocharacter lam = Cocharacter::diagonal({1, -1});
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) {
      Vec v{f4.element_at(a), f4.element_at(b)};
      auto parts = tuple_from_extension_point(v, basis, f2);
      ASSERT_EQ(parts.size(), 2u);
      for (std::size_t i = 0; i < 2; ++i)
        EXPECT_EQ(v[i], f4.embed(parts[0][i]) + f4.gen() * f4.embed(parts[1][i]));
      Vec flat = parts[0];
      flat.insert(flat.end(), parts[1].begin(), parts[1].end());
      EXPECT_EQ(limit(v, lam, on_v).exists, limit(flat, lam, on_tuple).exists);
      for (const auto& g : group) {
        const bool fixes_v = g.embed(f4).apply(v) == v;
        const bool fixes_tuple = g.apply(parts[0]) == parts[0] && g.apply(parts[1]) == parts[1];
        EXPECT_EQ(fixes_v, fixes_tuple);
      }
    }
}

TEST(TupleLab, SemisimplifyExamples) {
  Field q = Field::rationals(), f3 = Field::prime(3);
  MatrixTuple ss = semisimplify_tuple({M(q, {{"0", "1"}, {"0", "0"}})});
  ASSERT_EQ(ss.size(), 1u);
  EXPECT_TRUE(ss[0].is_zero());

  Matrix f = Matrix::companion(parse_poly(f3, "(T-1)^2*(T+1)"));
  EXPECT_EQ(orbit_id(semisimplify_tuple({f})[0]), semisimplification(f).id());

  Matrix d = M(f3, {{"1", "0"}, {"0", "2"}});
  EXPECT_EQ(orbit_id(semisimplify_tuple({d})[0]), orbit_id(d));
}

TEST(TupleLab, SemisimplifyProperties) {
  std::mt19937_64 rng(89);
  Field k = Field::prime(2);
  TupleModel model(k, 2, 2);
  const TupleConjugationAction act(k, 2, 2);
  for (int i = 0; i < 40; ++i) {
    MatrixTuple t{oracle::random_matrix(k, 2, rng, 0.5), oracle::random_matrix(k, 2, rng, 0.5)};
    MatrixTuple s = semisimplify_tuple(t);
    EXPECT_TRUE(is_semisimple(s).semisimple);
    for (std::size_t j = 0; j < t.size(); ++j) EXPECT_EQ(char_poly(s[j]), char_poly(t[j]));
    EXPECT_EQ(model.orbit_id(act.flatten(semisimplify_tuple(s))), model.orbit_id(act.flatten(s)));
    EXPECT_EQ(*accessibility_graph(act.flatten(t), model).minimal, model.orbit_id(act.flatten(s)));
  }
}

TEST(TupleLab, FunctionFieldTuplesAreRefused) {
  Field k = Field::parse("Fp(t):p=2");
  Matrix a = Matrix::parse(k, {{"t", "1"}, {"0", "t"}}), b = Matrix::parse(k, {{"1", "0"}, {"1", "1"}});
  try {
    is_semisimple({a, b});
    FAIL() << "multi-matrix tuple over F_p(t) accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedField);
  }
}

TEST(TupleLab, AntisymmetryOfTupleOrbits) {
  AntisymmetryReport r = check_antisymmetry(TupleModel(Field::prime(2), 2, 2));
  EXPECT_TRUE(r.antisymmetric());
  EXPECT_EQ(r.points, 256u);
}

TEST(TupleLab, TupleJsonRoundTrip) {
  Field k = Field::parse("GF(3^2)");
  std::mt19937_64 rng(97);
  MatrixTuple t{oracle::random_matrix(k, 2, rng), oracle::random_matrix(k, 2, rng)};
  EXPECT_EQ(json_io::tuple_from_json(json_io::tuple_to_json(t)), t);
}
