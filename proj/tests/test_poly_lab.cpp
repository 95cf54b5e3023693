#include <gtest/gtest.h>

#include <random>

#include "ccc/factor.hpp"
#include "oracles.hpp"

using namespace ccc;

namespace {

Poly P(const char* field, const char* text) { return parse_poly(Field::parse(field), text); }

// Irreducibility over a finite field by trial division with every monic
// polynomial of degree at most deg/2.
bool irreducible_by_trial_division(const Poly& f) {
  const Field& k = f.field();
  const std::uint64_t q = k.size_u64();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<Elem> coeffs;
      std::uint64_t rest = c;
      for (int i = 0; i < d; ++i) {
        coeffs.push_back(k.element_at(rest % q));
        rest /= q;
      }
      coeffs.push_back(k.one());
      if ((f % Poly(k, coeffs)).is_zero()) return false;
    }
  }
  return f.degree() >= 1;
}

Poly random_poly(const Field& k, int degree, std::mt19937_64& rng) {
  std::vector<Elem> c;
  for (int i = 0; i < degree; ++i) c.push_back(oracle::small_elem(k, rng));
  c.push_back(k.one());
  return Poly(k, c);
}

Poly reconstruct(const FactorReport& r) {
  Poly out = Poly::constant(r.unit);
  for (const auto& [f, e] : r.factors) out *= f.pow(static_cast<unsigned>(e));
  return out;
}

}  // namespace

TEST(PolyLab, GcdExamples) {
  EXPECT_EQ(gcd(P("Q", "T^2-1"), P("Q", "T-1")), P("Q", "T-1"));
  EXPECT_EQ(gcd(P("Q", "3*T+6"), Poly(Field::rationals())), P("Q", "T+2"));
  Poly f = P("Fp(t):p=2", "(T^2+t)*(T+1)");
  EXPECT_EQ(f.derivative(), P("Fp(t):p=2", "T^2+t"));
  EXPECT_EQ(gcd(f, f.derivative()), P("Fp(t):p=2", "T^2+t"));
}

TEST(PolyLab, DerivativeExamples) {
  EXPECT_TRUE(P("Fp(t):p=2", "T^12+t").derivative().is_zero());
  EXPECT_EQ(P("Fp(t):p=2", "T^3+t").derivative(), P("Fp(t):p=2", "T^2"));
  EXPECT_TRUE(P("Q", "7").derivative().is_zero());
}

TEST(PolyLab, SeparabilityExamples) {
  EXPECT_FALSE(is_separable(P("Fp(t):p=2", "T^2+t")));
  EXPECT_TRUE(is_separable(P("Fp(t):p=2", "T^2+T+t")));
  EXPECT_FALSE(is_separable(P("Q", "(T-1)^2")));
  EXPECT_THROW(is_separable(Poly(Field::rationals())), Error);
}

TEST(PolyLab, SquarefreeExamples) {
  EXPECT_TRUE(squarefree_test(P("Fp(t):p=2", "T^12+t")));
  // a^4 = s, so (T+a)^4 over k(a) with s^3 = t.
  EXPECT_FALSE(squarefree_test(P("ext(ext(Fp(t):p=2;s^3-t;s);a^4-s;a)", "(T+a)^4")));
  // gcd(f, f') is not 1, yet f is square-free.
  EXPECT_TRUE(squarefree_test(P("Fp(t):p=2", "(T^2+t)*(T+1)")));
}

TEST(PolyLab, RadicalExamples) {
  EXPECT_EQ(radical(P("Q", "(T-1)^2*(T-2)")), P("Q", "(T-1)*(T-2)"));
  EXPECT_EQ(radical(P("Fp(t):p=2", "T^12+t")), P("Fp(t):p=2", "T^12+t"));
  EXPECT_EQ(radical(P("Fp(t):p=2", "(T^2+t)^2")), P("Fp(t):p=2", "T^2+t"));
}

TEST(PolyLab, FactorExamples) {
  EXPECT_EQ(factor(P("Q", "T^4-1")).str(), "(T-1)(T+1)(T^2+1)");
  FactorReport sq = factor(P("Fp(t):p=2", "T^2+t^2"));
  ASSERT_EQ(sq.factors.size(), 1u);
  EXPECT_EQ(sq.factors[0].second, 2);
  EXPECT_EQ(sq.factors[0].first, P("Fp(t):p=2", "T+t"));
  EXPECT_EQ(factor(P("Fp(t):p=2", "T^12+t")).factors.size(), 1u);
}

TEST(PolyLab, TwelfthDegreeSplitsIntoThreeQuarticsOverSeparableTower) {
  const char* tower = "ext(ext(Fp(t):p=2;s^3-t;s);z^2+z+1;z)";
  FactorReport r = factor(P(tower, "T^12+t"));
  ASSERT_EQ(r.factors.size(), 3u);
  for (const auto& [f, e] : r.factors) {
    EXPECT_EQ(f.degree(), 4);
    EXPECT_EQ(e, 1);
  }
  EXPECT_EQ(r.str(), "(T^4+s)(T^4+s*z)(T^4+(s*z+s))");
  EXPECT_TRUE(squarefree_test(P(tower, "T^12+t")));
  // Without the cube roots of unity only one quartic splits off.
  FactorReport r2 = factor(P("ext(Fp(t):p=2;s^3-t;s)", "T^12+t"));
  ASSERT_EQ(r2.factors.size(), 2u);
  EXPECT_EQ(r2.factors[0].first.degree(), 4);
  EXPECT_EQ(r2.factors[1].first.degree(), 8);
}

TEST(PolyLab, InseparableStepCreatesRepeatedFactor) {
  FactorReport r = factor(P("ext(Fp(t):p=2;a^2-t;a)", "T^2+t"));
  ASSERT_EQ(r.factors.size(), 1u);
  EXPECT_EQ(r.factors[0].second, 2);
  EXPECT_FALSE(squarefree_test(P("ext(Fp(t):p=2;a^2-t;a)", "T^2+t")));
  EXPECT_TRUE(squarefree_test(P("Fp(t):p=2", "T^2+t")));
}

TEST(PolyLab, FactorsOverFiniteFieldsAreIrreducibleAndReconstruct) {
  std::mt19937_64 rng(5);
  for (const char* d : {"GF(2)", "GF(3)", "GF(5)", "GF(2^2)"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 40; ++i) {
      Poly f = random_poly(k, 1 + static_cast<int>(rng() % 3), rng) * random_poly(k, 1 + static_cast<int>(rng() % 3), rng);
      if (rng() % 2) f *= random_poly(k, 1, rng).pow(2);
      FactorReport r = factor(f);
      EXPECT_EQ(reconstruct(r), f) << d << " " << f.str();
      for (const auto& [g, e] : r.factors) {
        EXPECT_TRUE(g.is_monic());
        EXPECT_TRUE(irreducible_by_trial_division(g)) << g.str();
      }
      bool all_simple = std::all_of(r.factors.begin(), r.factors.end(), [](const auto& fe) { return fe.second == 1; });
      EXPECT_EQ(squarefree_test(f), all_simple);
      EXPECT_EQ(squarefree_test(f), oracle::squarefree_by_derivative(f));
    }
  }
}

TEST(PolyLab, RationalFactorizationReconstructs) {
  std::mt19937_64 rng(9);
  Field q = Field::rationals();
  for (int i = 0; i < 40; ++i) {
    Poly f = random_poly(q, 1 + static_cast<int>(rng() % 3), rng) * random_poly(q, 1 + static_cast<int>(rng() % 2), rng);
    if (rng() % 3 == 0) f *= random_poly(q, 1, rng).pow(2);
    FactorReport r = factor(f);
    EXPECT_EQ(reconstruct(r), f) << f.str();
    bool all_simple = std::all_of(r.factors.begin(), r.factors.end(), [](const auto& fe) { return fe.second == 1; });
    EXPECT_EQ(squarefree_test(f), all_simple);
    EXPECT_EQ(squarefree_test(f), oracle::squarefree_by_derivative(f));
  }
}

TEST(PolyLab, FunctionFieldFactorizationReconstructs) {
  std::mt19937_64 rng(13);
  Field k = Field::parse("Fp(t):p=2");
  for (int i = 0; i < 30; ++i) {
    Poly f = random_poly(k, 1 + static_cast<int>(rng() % 2), rng) * random_poly(k, 1 + static_cast<int>(rng() % 2), rng);
    if (rng() % 3 == 0) f *= random_poly(k, 1, rng).pow(2);
    FactorReport r = factor(f);
    EXPECT_EQ(reconstruct(r), f) << f.str();
    bool all_simple = std::all_of(r.factors.begin(), r.factors.end(), [](const auto& fe) { return fe.second == 1; });
    EXPECT_EQ(squarefree_test(f), all_simple) << f.str();
    for (const auto& [g, e] : r.factors) EXPECT_TRUE(is_irreducible(g));
  }
}

TEST(PolyLab, SeparableImpliesSquarefreeButNotConversely) {
  std::mt19937_64 rng(17);
  Field k = Field::parse("Fp(t):p=3");
  for (int i = 0; i < 30; ++i) {
    Poly f = random_poly(k, 1 + static_cast<int>(rng() % 4), rng);
    if (is_separable(f)) EXPECT_TRUE(squarefree_test(f));
  }
  Poly witness = P("Fp(t):p=2", "T^2+t");
  EXPECT_TRUE(squarefree_test(witness));
  EXPECT_FALSE(is_separable(witness));
}

TEST(PolyLab, RadicalIsSquarefreeDividesAndIsIdempotent) {
  std::mt19937_64 rng(19);
  for (const char* d : {"Q", "GF(3)", "Fp(t):p=2"}) {
    Field k = Field::parse(d);
    for (int i = 0; i < 15; ++i) {
      Poly f = random_poly(k, 1 + static_cast<int>(rng() % 2), rng).pow(2) * random_poly(k, 1, rng);
      Poly r = radical(f);
      EXPECT_TRUE(squarefree_test(r));
      EXPECT_TRUE(divides(r, f));
      EXPECT_EQ(radical(r), r);
    }
  }
}

TEST(PolyLab, SquarefreeVerdictSurvivesSeparableBaseChange) {
  std::mt19937_64 rng(23);
  Field f2 = Field::prime(2), f16 = Field::finite(2, 4);
  for (int i = 0; i < 40; ++i) {
    Poly f = random_poly(f2, 1 + static_cast<int>(rng() % 6), rng);
    EXPECT_EQ(squarefree_test(f), squarefree_test(f.embed(f16))) << f.str();
  }
}

TEST(PolyLab, DegreeBoundIsEnforced) {
  FactorOptions opt;
  opt.max_degree = 4;
  try {
    factor(P("Q", "T^6+T^3+1"), opt);
    FAIL() << "bound ignored";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeTooLarge);
  }
}

TEST(PolyLab, PthPowersAndComponents) {
  Field k = Field::parse("Fp(t):p=2");
  EXPECT_EQ(pth_root(k.parse_element("t^2"))->str(), "t");
  EXPECT_FALSE(pth_root(k.parse_element("t")).has_value());
  EXPECT_FALSE(is_nth_power(k.parse_element("t"), 2).has_value());
  Elem x = k.parse_element("(t^3+t^2+1)/(t+1)");
  auto y = p_components(x);
  Elem back = k.zero();
  for (std::size_t j = 0; j < y.size(); ++j) back += p_basis_element(k).pow(static_cast<long long>(j)) * y[j] * y[j];
  EXPECT_EQ(back, x);
}

TEST(PolyLab, RootsAreSortedAndDistinct) {
  auto rs = roots(P("GF(5)", "T^5-T"));
  ASSERT_EQ(rs.size(), 5u);
  for (std::size_t i = 1; i < rs.size(); ++i) EXPECT_TRUE(rs[i - 1] < rs[i]);
}

TEST(PolyLab, ZeroPolynomialIsRejected) {
  try {
    squarefree_test(Poly(Field::rationals()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
  }
}
