#include <random>

#include <gtest/gtest.h>

#include "moment_forge/formal/calculus.hpp"
#include "moment_forge/formal/identities.hpp"
#include "moment_forge/formal/instances.hpp"

using namespace moment_forge::formal;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, const std::vector<Exponent>& vars) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), pw(-2, 2), terms(0, 3);
  LaurentPoly p;
  for (int t = terms(rng); t > 0; --t) {
    Exponent x;
    for (const auto& v : vars) x = x + v * pw(rng);
    p.add_term(x, Rational(num(rng), den(rng)));
  }
  return p;
}

FormalSeries random_series(std::mt19937_64& rng, const std::vector<Exponent>& vars, int degree) {
  FormalSeries s(degree);
  for (int k = 0; k <= degree; ++k) s[k] = random_poly(rng, vars);
  return s;
}

}  // namespace

TEST(Laurent, RingLaws) {
  SymbolTable sy;
  std::vector<Exponent> vars{sy.symbol("x"), sy.symbol("y"), sy.symbol("z")};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly(rng, vars), b = random_poly(rng, vars), c = random_poly(rng, vars);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + (-a), LaurentPoly());
    EXPECT_EQ(a * LaurentPoly(1), a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Laurent, ZeroCoefficientsAreDropped) {
  SymbolTable sy;
  const auto x = sy.symbol("x");
  LaurentPoly p = LaurentPoly::monomial(x, 3);
  p.add_term(x, -3);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
  auto q = LaurentPoly::monomial(x * 2, Rational(1, 2)) + LaurentPoly::monomial(-x);
  EXPECT_EQ(q.coefficient(x * 2), Rational(1, 2));
  EXPECT_EQ(q.coefficient(x), Rational(0));
  EXPECT_EQ(sy.format(x * 2 - sy.symbol("w")), "y_x^2*y_w^-1");
}

TEST(Series, ReciprocalInvertsSeriesWithUnitConstant) {
  SymbolTable sy;
  std::vector<Exponent> vars{sy.symbol("x"), sy.symbol("y")};
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    auto s = random_series(rng, vars, 6);
    s[0] = 1;
    EXPECT_EQ(s * s.reciprocal(), FormalSeries::one(6));
    EXPECT_EQ(s.reciprocal().reciprocal(), s);
  }
  auto bad = FormalSeries::constant(3, 2);
  EXPECT_THROW(bad.reciprocal(), moment_forge::DomainError);
}

TEST(Series, MultiplicationIsTruncatedCauchyProduct) {
  SymbolTable sy;
  std::vector<Exponent> vars{sy.symbol("x")};
  std::mt19937_64 rng(9);
  auto a = random_series(rng, vars, 5), b = random_series(rng, vars, 5);
  auto c = a * b;
  for (int n = 0; n <= 5; ++n) {
    LaurentPoly expected;
    for (int i = 0; i <= n; ++i) expected += a[i] * b[n - i];
    EXPECT_EQ(c[n], expected);
  }
}

TEST(SeqFun, SetFunIsCompleteHomogeneous) {
  SymbolTable sy;
  const auto a = sy.symbol("a"), b = sy.symbol("b"), c = sy.symbol("c");
  auto f = set_fun({a, b, c});
  for (int n = 0; n <= 6; ++n) {
    LaurentPoly expected;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) expected.add_term(a * i + b * j + c * (n - i - j), 1);
    EXPECT_EQ(f(n), expected) << n;
  }
  EXPECT_EQ(set_fun({})(0), LaurentPoly(1));
  EXPECT_TRUE(set_fun({})(3).is_zero());
}

TEST(SeqFun, SumAndProductFormsOfZAgree) {
  SymbolTable sy;
  FormalSet s{sy.symbol("a"), sy.symbol("b"), sy.symbol("a") * 2 - sy.symbol("b")};
  EXPECT_EQ(z_op(set_fun(s), 7), z_product(s, 7));
}

TEST(SeqFun, StarAndPlusAreGeneratingFunctionProducts) {
  SymbolTable sy;
  std::mt19937_64 rng(12);
  auto f = random_sequence(rng, sy, 3), g = random_sequence(rng, sy, 3);
  const int deg = 7;
  EXPECT_EQ(z_op(star(f, g), deg), z_op(f, deg) * z_op(g, deg));
  EXPECT_EQ(z_op(plus_fun(f), deg), z_op(f, deg) * FormalSeries::one_minus(deg, 1, Exponent{}).reciprocal());
}

TEST(Calculus, FOpMatchesTripleSum) {
  SymbolTable sy;
  std::mt19937_64 rng(21);
  auto a = random_sequence(rng, sy, 3), big_a = set_fun({sy.symbol("u")}), b = random_sequence(rng, sy, 3),
       big_b = set_fun({sy.symbol("v"), sy.symbol("w")});
  const int deg = 6;
  auto f = f_op(a, big_a, b, big_b, deg);
  for (int n = 0; n <= deg; ++n) {
    LaurentPoly expected;
    for (int k = 0; k <= n; ++k)
      for (int l = 0; k + l <= n; ++l) {
        const int m = n - k - l;
        expected += a(k) * big_a(k + m) * b(l) * big_b(l + m);
      }
    EXPECT_EQ(f[n], expected) << n;
  }
  auto c = c_op(a, b, deg);
  for (int n = 0; n <= deg; ++n) EXPECT_EQ(c[n], a(n) * b(n));
}

TEST(Identities, FourFunctionIdentityForSymbolicSets) {
  for (auto sizes : std::vector<std::vector<int>>{{0, 0, 0, 0}, {1, 1, 1, 1}, {2, 1, 0, 1}, {1, 2, 2, 1}}) {
    auto cert = verify_lemma1(sizes, 6);
    EXPECT_TRUE(cert.equal) << cert.to_json().dump();
    EXPECT_EQ(cert.degree, 6);
  }
}

TEST(Identities, FourFunctionIdentityForRandomSequences) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) EXPECT_TRUE(verify_lemma1_random(seed, 7).equal) << seed;
}

TEST(Identities, SemidiagonalSizes) {
  for (int a1 = 1; a1 <= 2; ++a1)
    for (int b1 = 1; b1 <= 2; ++b1)
      for (int a2 = 0; a2 <= 1; ++a2)
        for (int b2 = 0; b2 <= 1; ++b2)
          EXPECT_TRUE(verify_semidiagonal({a1, b1, a2, b2}, 6).equal) << a1 << b1 << a2 << b2;
  EXPECT_THROW(verify_semidiagonal({0, 1, 1, 1}, 4), moment_forge::DomainError);
}

TEST(Identities, TwoSwapReformulation) {
  EXPECT_TRUE(verify_theorem2({1, 1, 1, 1}, 6).equal);
  EXPECT_TRUE(verify_theorem2({2, 1, 1, 1}, 5).equal);
  EXPECT_TRUE(verify_theorem2({0, 1, 1, 0}, 6).equal);
}

TEST(Identities, DegreeZeroIsTrivial) {
  auto cert = verify_lemma1({1, 1, 1, 1}, 0);
  EXPECT_TRUE(cert.equal);
  EXPECT_EQ(cert.degree, 0);
  EXPECT_TRUE(cert.to_json()["first_mismatch"].is_null());
}

TEST(Identities, MutatedIdentityIsRejected) {
  SymbolTable sy;
  const Exponent alpha = sy.symbol("alpha"), beta = sy.symbol("beta");
  FormalSet a1{alpha}, b1{beta}, a2{sy.symbol("c1")}, b2{sy.symbol("d1")};
  const int deg = 5;
  auto sides = semidiagonal_sides(a1, b1, a2, b2, alpha, beta, deg);
  ASSERT_EQ(sides.lhs, sides.rhs);
  // Flip the sign of beta in the (1 - X^{1-alpha-beta}) factor.
  SeriesPair mutated{sides.lhs, sides.rhs * FormalSeries::one_minus(deg, 1, -(alpha + beta)).reciprocal() *
                                    FormalSeries::one_minus(deg, 1, beta - alpha)};
  auto cert = certify("semidiagonal-mutated", {1, 1, 1, 1}, mutated, sy, 0.0);
  EXPECT_FALSE(cert.equal);
  ASSERT_TRUE(cert.first_mismatch.has_value());
  EXPECT_EQ(cert.first_mismatch->degree, 1);
  EXPECT_NE(cert.first_mismatch->lhs, cert.first_mismatch->rhs);
  EXPECT_FALSE(cert.to_json()["first_mismatch"].is_null());

  // Dropping the product term of the four-function identity breaks it at degree 0.
  auto f = set_fun({sy.symbol("p")}), g = set_fun({sy.symbol("q")});
  auto ok = lemma1_sides(f, g, g, f, 4);
  SeriesPair broken{ok.lhs, c_op(star(g, g), star(f, f), 4)};
  auto bad = certify("lemma1-mutated", {}, broken, sy, 0.0);
  EXPECT_FALSE(bad.equal);
  EXPECT_EQ(bad.first_mismatch->degree, 0);
}

TEST(Identities, CertificateJsonShape) {
  auto j = verify_theorem2({1, 1, 1, 1}, 3).to_json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["identity"], "theorem2");
  EXPECT_EQ(j["set_sizes"], nlohmann::json::array({1, 1, 1, 1}));
  EXPECT_EQ(j["degree"], 3);
  EXPECT_TRUE(j["equal"].get<bool>());
  EXPECT_TRUE(j.contains("wall_time"));
}
