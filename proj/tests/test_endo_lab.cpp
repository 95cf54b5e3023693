#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "ccc/endo.hpp"
#include "ccc/json_io.hpp"
#include "ccc/models.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace ccc;

namespace {

Matrix M(const char* field, std::vector<std::vector<std::string>> rows) { return Matrix::parse(Field::parse(field), rows); }
Poly P(const char* field, const char* text) { return parse_poly(Field::parse(field), text); }
Poly P(const Field& k, const char* text) { return parse_poly(k, text); }

Matrix demo_matrix(const std::string& name) {
  std::ifstream in(std::string(CCC_TEST_DEMO_DIR) + "/" + name);
  return json_io::matrix_from_json(json_io::Json::parse(in), std::nullopt);
}

Matrix J2(const char* field = "Q") { return M(field, {{"0", "1"}, {"0", "0"}}); }

// Characteristic polynomial sampled through cofactor determinants of x I - f.
void expect_char_poly_matches_determinants(const Matrix& f, const std::vector<Elem>& points) {
  const Poly chi = char_poly(f);
  for (const auto& x : points) {
    Matrix shifted = Matrix::identity(f.field(), f.rows()) * x - f;
    EXPECT_EQ(chi.eval(x), oracle::cofactor_det(shifted)) << f.str() << " at " << x.str();
  }
}

// Number of matrices commuting with f, by enumeration.
std::size_t commuting_count(const Matrix& f) {
  std::size_t c = 0;
  for (const auto& x : oracle::all_matrices(f.field(), f.rows()))
    if (x * f == f * x) ++c;
  return c;
}

}  // namespace

TEST(EndoLab, CharPolyExamples) {
  Matrix comp = demo_matrix("comp_T12_plus_t.json");
  EXPECT_EQ(char_poly(comp), P(comp.field(), "T^12+t"));
  Field q = Field::rationals();
  EXPECT_EQ(char_poly(Matrix(q, 3, 3)), P("Q", "T^3"));
  EXPECT_EQ(char_poly(M("Q", {{"1", "0"}, {"0", "2"}})), P("Q", "(T-1)*(T-2)"));
  EXPECT_THROW(char_poly(Matrix(q, 2, 3)), Error);
}

TEST(EndoLab, CharPolyMatchesCofactorDeterminants) {
  std::mt19937_64 rng(31);
  for (const char* d : {"Q", "GF(5)", "Fp(t):p=2"}) {
    Field k = Field::parse(d);
    std::vector<Elem> points;
    for (int i = 0; i < 5; ++i) points.push_back(oracle::small_elem(k, rng));
    for (int i = 0; i < 15; ++i) expect_char_poly_matches_determinants(oracle::random_matrix(k, 1 + i % 4, rng), points);
  }
}

TEST(EndoLab, MinPolyExamples) {
  EXPECT_EQ(min_poly(J2()), P("Q", "T^2"));
  EXPECT_EQ(min_poly(M("Q", {{"1", "0"}, {"0", "1"}})), P("Q", "T-1"));
  Matrix c = demo_matrix("comp_T2_plus_t.json");
  EXPECT_EQ(min_poly(Matrix::block_diag({c, c})), P(c.field(), "T^2+t"));
}

TEST(EndoLab, MinPolyAnnihilatesMinimally) {
  std::mt19937_64 rng(37);
  for (const char* d : {"Q", "GF(2)", "GF(3)", "Fp(t):p=2"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 25; ++i) {
      Matrix f = oracle::random_matrix(k, 1 + i % 4, rng, 0.5);
      Poly mu = min_poly(f);
      EXPECT_TRUE(eval_poly(mu, f).is_zero()) << f.str();
      for (const auto& [q, e] : factor(mu).factors) EXPECT_FALSE(eval_poly(mu / q, f).is_zero()) << f.str();
      EXPECT_TRUE((char_poly(f) % mu).is_zero());
    }
  }
}

TEST(EndoLab, InvariantFactorExamples) {
  EXPECT_EQ(invariant_factors(J2()).invariant_factors, std::vector<Poly>{P("Q", "T^2")});
  EXPECT_EQ(invariant_factors(M("Q", {{"1", "0", "0"}, {"0", "2", "0"}, {"0", "0", "2"}})).invariant_factors,
            (std::vector<Poly>{P("Q", "T-2"), P("Q", "(T-1)*(T-2)")}));
  Poly f = P("Q", "(T-1)^2*(T-2)");
  EXPECT_EQ(invariant_factors(Matrix::companion(f)).invariant_factors, std::vector<Poly>{f});
}

TEST(EndoLab, InvariantFactorsDivideAndMultiplyToCharPoly) {
  std::mt19937_64 rng(41);
  for (const char* d : {"Q", "GF(2)", "Fp(t):p=3"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 25; ++i) {
      Matrix f = oracle::random_matrix(k, 1 + i % 4, rng, 0.6);
      EndoClass c = invariant_factors(f);
      Poly prod = Poly::constant(k.one());
      int total = 0;
      for (std::size_t j = 0; j < c.invariant_factors.size(); ++j) {
        prod *= c.invariant_factors[j];
        total += c.invariant_factors[j].degree();
        if (j + 1 < c.invariant_factors.size())
          EXPECT_TRUE((c.invariant_factors[j + 1] % c.invariant_factors[j]).is_zero());
      }
      EXPECT_EQ(total, static_cast<int>(f.rows()));
      EXPECT_EQ(prod, char_poly(f));
      EXPECT_EQ(c.invariant_factors.back(), min_poly(f));
      // The rational canonical form lies in the same class.
      EXPECT_EQ(invariant_factors(rational_canonical_form(c.invariant_factors, k)), c);
    }
  }
}

TEST(EndoLab, OrbitIdIsACompleteConjugacyInvariantOverF2) {
  Field k = Field::prime(2);
  const auto group = oracle::general_linear_group(k, 2);
  const auto all = oracle::all_matrices(k, 2);
  for (const auto& a : all)
    for (const auto& b : all) EXPECT_EQ(orbit_id(a) == orbit_id(b), oracle::conjugate_in(group, a, b));
}

TEST(EndoLab, ClosednessExamples) {
  Matrix comp = demo_matrix("comp_T12_plus_t.json");
  EXPECT_TRUE(is_cocharacter_closed(comp).closed);

  ClosednessReport j = is_cocharacter_closed(J2());
  EXPECT_FALSE(j.closed);
  ASSERT_TRUE(j.destabilizer && j.limit);
  EXPECT_EQ(j.destabilizer->weights, (Weights{1, -1}));
  EXPECT_TRUE(j.limit->is_zero());

  Field ka2 = Field::parse("ext(ext(Fp(t):p=2;s^3-t;s);c^2-s;c)");
  EXPECT_FALSE(is_cocharacter_closed(comp.embed(ka2)).closed);
}

TEST(EndoLab, NonClosedCertificateLeavesTheOrbit) {
  std::mt19937_64 rng(43);
  for (const char* d : {"Q", "GF(2)", "Fp(t):p=2"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 40; ++i) {
      Matrix f = oracle::random_matrix(k, 2 + i % 3, rng, 0.6);
      ClosednessReport r = is_cocharacter_closed(f);
      if (r.closed) continue;
      ASSERT_TRUE(r.destabilizer && r.limit);
      EXPECT_EQ(conjugation_limit(f, *r.destabilizer), r.limit);
      EXPECT_NE(orbit_id(*r.limit), orbit_id(f));
      EXPECT_FALSE(r.stable_subspace.empty());
      EXPECT_LT(r.stable_subspace.size(), f.rows());
      EchelonBasis sub(k, f.rows());
      for (const auto& v : r.stable_subspace) sub.insert(v);
      for (const auto& v : r.stable_subspace) EXPECT_TRUE(sub.contains(f.apply(v)));
    }
  }
}

TEST(EndoLab, GeometricClosednessExamples) {
  Matrix c = demo_matrix("comp_T2_plus_t.json");
  EXPECT_FALSE(is_geometrically_closed(c));
  EXPECT_TRUE(is_cocharacter_closed(c).closed);
  EXPECT_TRUE(is_geometrically_closed(M("Q", {{"1", "0"}, {"0", "2"}})));
  EXPECT_FALSE(is_geometrically_closed(J2()));
}

TEST(EndoLab, SemisimplificationExamples) {
  Field q = Field::rationals();
  EndoClass s = semisimplification(Matrix::companion(P("Q", "(T-1)^2*(T-2)")));
  EXPECT_EQ(s, invariant_factors(M("Q", {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "2"}})));
  Matrix d = M("Q", {{"1", "0"}, {"0", "2"}});
  EXPECT_EQ(semisimplification(d), invariant_factors(d));
  EXPECT_EQ(semisimplification(J2()), invariant_factors(Matrix(q, 2, 2)));
}

TEST(EndoLab, SemisimplificationMatchesBruteForceMinimalOrbitOverF5) {
  // companion((T-1)^2 (T-2)) over GF(5): the only closed orbit reachable by
  // flag limits is that of diag(1, 1, 2).
  Field k = Field::prime(5);
  Matrix f = Matrix::companion(parse_poly(k, "(T-1)^2*(T-2)"));
  EndoClass s = semisimplification(f);
  EXPECT_TRUE(is_cocharacter_closed(s.representative).closed);
  bool reached = false;
  for (const auto& fl : flag_limits({f}))
    if (is_cocharacter_closed(fl.limit.front()).closed) {
      EXPECT_EQ(orbit_id(fl.limit.front()), s.id());
      reached = true;
    }
  EXPECT_TRUE(reached);
}

TEST(EndoLab, SemisimplificationProperties) {
  std::mt19937_64 rng(47);
  for (const char* d : {"Q", "GF(2)", "GF(3)", "Fp(t):p=2"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 25; ++i) {
      Matrix f = oracle::random_matrix(k, 1 + i % 4, rng, 0.6);
      EndoClass s = semisimplification(f);
      EXPECT_EQ(s.char_poly, char_poly(f));
      EXPECT_TRUE((min_poly(f) % s.min_poly).is_zero());
      EXPECT_EQ(s.min_poly, radical(min_poly(f)));
      EXPECT_EQ(semisimplification(s.representative), s);
      EXPECT_TRUE(is_cocharacter_closed(s.representative).closed);
      // End to end: the witness limit lies in the semisimplification.
      Witness w = witness_cocharacter(f);
      EXPECT_EQ(conjugation_limit(f, w.cocharacter), w.limit);
      EXPECT_EQ(invariant_factors(w.limit), s);
    }
  }
}

TEST(EndoLab, WitnessExamples) {
  Witness w = witness_cocharacter(J2());
  EXPECT_EQ(w.cocharacter.weights, (Weights{1, -1}));
  EXPECT_TRUE(w.limit.is_zero());

  Matrix c = Matrix::companion(P("Q", "(T-1)^2"));
  Witness wc = witness_cocharacter(c);
  EXPECT_EQ(wc.limit, Matrix::identity(Field::rationals(), 2));

  Matrix d = M("Q", {{"1", "0"}, {"0", "2"}});
  Witness wd = witness_cocharacter(d);
  EXPECT_TRUE(wd.cocharacter.is_zero());
  EXPECT_EQ(wd.limit, d);
}

TEST(EndoLab, RuConjugatorExamples) {
  Matrix f = M("Q", {{"1", "1"}, {"0", "2"}}), lim = M("Q", {{"1", "0"}, {"0", "2"}});
  Cocharacter lam = Cocharacter::diagonal({1, -1});
  Matrix u = ru_conjugator(f, lim, lam);
  EXPECT_EQ(u, M("Q", {{"1", "-1"}, {"0", "1"}}));
  EXPECT_EQ(u * f * inverse(u), lim);
  EXPECT_EQ(p_lambda_membership(u, lam), ParabolicMembership::InRuP);

  EXPECT_TRUE(ru_conjugator(lim, lim, lam).is_identity());

  try {
    ru_conjugator(J2(), Matrix(Field::rationals(), 2, 2), lam);
    FAIL() << "different orbits accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRuConjugate);
  }
}

TEST(EndoLab, RuConjugatorOnRandomLimitsInTheSameOrbit) {
  std::mt19937_64 rng(53);
  Field k = Field::prime(3);
  int found = 0;
  for (int i = 0; i < 300 && found < 25; ++i) {
    Matrix f = oracle::random_matrix(k, 3, rng);
    for (std::size_t r = 1; r < 3; ++r)
      for (std::size_t c = 0; c < r; ++c) f(r, c) = k.zero();
    Cocharacter lam = Cocharacter::diagonal({1, 0, -1});
    Matrix lim = *conjugation_limit(f, lam);
    if (orbit_id(lim) != orbit_id(f)) continue;
    ++found;
    Matrix u = ru_conjugator(f, lim, lam);
    EXPECT_EQ(u * f, lim * u);
    EXPECT_EQ(p_lambda_membership(u, lam), ParabolicMembership::InRuP);
  }
  EXPECT_GE(found, 10);
}

TEST(EndoLab, CommutantDimensionExamples) {
  Field q = Field::rationals();
  EXPECT_EQ(commutant_dimension(Matrix::identity(q, 2) * q.from_int(3)), 4u);
  EXPECT_EQ(commutant_dimension(J2()), 2u);
  EXPECT_EQ(commutant_dimension(Matrix::companion(P("Q", "T^2+1"))), 2u);
}

TEST(EndoLab, CommutantDimensionMatchesEnumeration) {
  for (std::uint64_t p : {2u, 3u}) {
    Field k = Field::prime(p);
    for (const auto& f : oracle::all_matrices(k, 2)) {
      std::size_t dim = commutant_dimension(f), expected = 1;
      for (std::size_t i = 0; i < dim; ++i) expected *= p;
      EXPECT_EQ(commuting_count(f), expected) << f.str();
      EXPECT_EQ(commutant_dimension_from_factors(invariant_factors(f).invariant_factors), dim);
    }
  }
}

TEST(EndoLab, ProperLimitsGrowTheCommutant) {
  Field k = Field::prime(2);
  for (const auto& f : oracle::all_matrices(k, 3))
    for (const auto& fl : flag_limits({f})) {
      const Matrix& lim = fl.limit.front();
      if (orbit_id(lim) != orbit_id(f)) EXPECT_GT(commutant_dimension(lim), commutant_dimension(f)) << f.str();
    }
}

TEST(EndoLab, ThreeWayAgreementOnSmallCorpora) {
  props::Tally t2 = props::three_way_equivalence(Field::prime(2), 2);
  EXPECT_TRUE(t2.clean()) << t2.summary();
  props::Tally t3 = props::three_way_equivalence(Field::prime(3), 1);
  EXPECT_TRUE(t3.clean()) << t3.summary();
}

TEST(EndoLab, ThreeWayAgreementOverInfiniteFields) {
  std::mt19937_64 rng(59);
  for (const char* d : {"Q", "Fp(t):p=2"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 30; ++i) {
      Matrix f = oracle::random_matrix(k, 1 + i % 4, rng, 0.6);
      const bool closed = is_cocharacter_closed(f).closed;
      EXPECT_EQ(closed, squarefree_test(min_poly(f))) << f.str();
      EXPECT_EQ(closed, is_semisimple({f}).semisimple) << f.str();
    }
  }
  // Square-free but inseparable: closed over k, not geometrically.
  Matrix c = demo_matrix("comp_T2_plus_t.json");
  EXPECT_TRUE(is_semisimple({c}).semisimple);
}

TEST(EndoLab, LeviCompatibilityOnBlocks) {
  props::Tally t = props::block_conjunction(80, 61);
  EXPECT_TRUE(t.clean()) << t.summary();
}

TEST(EndoLab, SeparableAscentAndTheInseparableFlip) {
  props::Tally t = props::galois_invariance(2);
  EXPECT_TRUE(t.clean()) << t.summary();
  Matrix c = demo_matrix("comp_T2_plus_t.json");
  EXPECT_TRUE(is_cocharacter_closed(c).closed);
  Field root_t = Field::parse("ext(Fp(t):p=2;x^2-t;x)");
  EXPECT_FALSE(is_cocharacter_closed(c.embed(root_t)).closed);
  Field sep = Field::parse("ext(Fp(t):p=2;z^2+z+1;z)");
  EXPECT_TRUE(is_cocharacter_closed(c.embed(sep)).closed);
}

TEST(EndoLab, PolynomialInvariantsSurviveBaseChange) {
  std::mt19937_64 rng(67);
  Field k = Field::prime(2), big = Field::finite(2, 4);
  for (int i = 0; i < 30; ++i) {
    Matrix f = oracle::random_matrix(k, 3, rng);
    EXPECT_EQ(char_poly(f.embed(big)), char_poly(f).embed(big));
    EXPECT_EQ(min_poly(f.embed(big)), min_poly(f).embed(big));
  }
}
