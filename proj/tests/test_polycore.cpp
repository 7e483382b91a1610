#include <gtest/gtest.h>

#include <random>

#include "nops/parse.hpp"
#include "nops/ratfunc.hpp"
#include "test_util.hpp"

using namespace nops;
using nops::testutil::P;

namespace {

const VarList kXY{"x", "y"};

TEST(Parse, SparseTerms) {
  Polynomial p = P("x^2 - 2*x*y", kXY);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient(Monomial{2, 0}), Rational(1));
  EXPECT_EQ(p.coefficient(Monomial{1, 1}), Rational(-2));
}

TEST(Parse, ZeroIsEmpty) { EXPECT_TRUE(P("0", kXY).is_zero()); }

TEST(Parse, BinomialExpansion) { EXPECT_EQ(P("(x+y)^2", kXY), P("x^2 + 2*x*y + y^2", kXY)); }

TEST(Parse, RationalLiteral) {
  Polynomial p = P("1/2*x - 3/6", kXY);
  EXPECT_EQ(p.coefficient(Monomial{1, 0}), Rational(1) / 2);
  EXPECT_EQ(p.constant_term(), Rational(-1) / 2);
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    P("x + * y", kXY);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Parse, UnknownVariable) { EXPECT_THROW(P("x + z", kXY), ParseError); }

TEST(Parse, PrintRoundTrip) {
  for (const char* text : {"x^2 - 2*x*y", "-x + 1/3", "0", "x*y^3 - 7"}) {
    Polynomial p = P(text, kXY);
    EXPECT_EQ(P(to_string(p, kXY), kXY), p) << text;
  }
  EXPECT_EQ(to_string(P("x^2 - 2*x*y", kXY), kXY), "x^2 - 2*x*y");
}

TEST(MonomialCompare, GrevlexExamples) {
  auto ord = MonomialOrder::grevlex();
  EXPECT_EQ(monomial_compare(Monomial{2, 0}, Monomial{1, 1}, ord), Cmp::GT);
  EXPECT_EQ(monomial_compare(Monomial{1, 0}, Monomial{0, 2}, ord), Cmp::LT);
  for (auto o : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(1u)})
    EXPECT_EQ(monomial_compare(Monomial{3, 1}, Monomial{3, 1}, o), Cmp::EQ);
}

TEST(MonomialCompare, LengthMismatchThrows) {
  EXPECT_THROW(monomial_compare(Monomial{1, 0}, Monomial{1, 0, 0}, MonomialOrder::grevlex()), Error);
}

// Exhaustive: total, antisymmetric, transitive, multiplicative, 1 minimal.
TEST(MonomialCompare, OrderAxiomsExhaustiveDegree4) {
  auto monos = monomials_up_to(3, 4);
  for (auto ord : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(0b001u),
                   MonomialOrder::block(0b110u)}) {
    for (const auto& a : monos) {
      EXPECT_FALSE(ord.less(a, Monomial(3)) );
      for (const auto& b : monos) {
        auto ab = ord.compare(a, b), ba = ord.compare(b, a);
        EXPECT_EQ(ab == 0, a == b);
        EXPECT_EQ(ab < 0, ba > 0);
        for (const auto& c : monos) {
          if (c.degree() > 2) continue;
          if (ab < 0) {
            EXPECT_TRUE(ord.less(a * c, b * c));
          }
          if (ab < 0 && ord.less(b, c)) {
            EXPECT_TRUE(ord.less(a, c));
          }
        }
      }
    }
  }
}

TEST(Substitute, EvaluateAtOrigin) {
  Polynomial f = P("x^2 - y", kXY);
  EXPECT_EQ(evaluate<Rational>(f, {Rational(0), Rational(0)}), Rational(0));
  EXPECT_THROW(evaluate<Rational>(f, {Rational(0), std::nullopt}), Error);
}

TEST(Substitute, ShiftVariable) {
  Polynomial f = P("x^2", kXY);
  auto r = substitute<Rational>(f, {P("y + 1", kXY), std::nullopt});
  EXPECT_EQ(r, P("y^2 + 2*y + 1", kXY));
}

TEST(Substitute, PartialRootSubstitution) {
  Polynomial f = P("x - y^2", kXY);
  EXPECT_TRUE(substitute<Rational>(f, {P("y^2", kXY), std::nullopt}).is_zero());
}

TEST(Substitute, RationalFunctionImages) {
  // x -> 1/y in x*y - 1 over Q(y).
  FracPolynomial f = to_fraction_field(P("x*y - 1", kXY), {0});
  FracPolynomial image(Monomial(2), RationalFunction(P("1", kXY), P("y", kXY)));
  EXPECT_TRUE(substitute<RationalFunction>(f, {image, std::nullopt}).is_zero());
}

TEST(Polynomial, RingAxiomsRandom) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    auto f = testutil::random_poly(rng, 3, 6), g = testutil::random_poly(rng, 3, 6), h = testutil::random_poly(rng, 3, 6);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(Rational, Exactness) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  for (int k = 0; k < 200; ++k) {
    long a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    Rational q(a, b);
    q.canonicalize();
    Rational inv(b, a);
    inv.canonicalize();
    EXPECT_EQ(q * inv, Rational(1));
  }
}

TEST(Polynomial, DerivativeNoFactorialNormalization) {
  EXPECT_EQ(P("x^3*y", kXY).derivative(Monomial{2, 1}), P("6*x", kXY));
}

TEST(Gcd, Multivariate) {
  Polynomial g = P("x - y^2", kXY);
  Polynomial a = g * P("x + 1", kXY), b = g * P("y^3 - 2", kXY);
  EXPECT_EQ(gcd(a, b), monic(g));
  EXPECT_EQ(gcd(P("x", kXY), P("y", kXY)), P("1", kXY));
}

TEST(RationalFunction, ReducesToLowestTerms) {
  RationalFunction f(P("x^2 - y^2", kXY), P("2*x - 2*y", kXY));
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f, RationalFunction(P("1/2*x + 1/2*y", kXY)));
  RationalFunction g = RationalFunction(P("1", kXY), P("y", kXY)) + RationalFunction(P("1", kXY), P("y^2", kXY));
  EXPECT_EQ(g, RationalFunction(P("y + 1", kXY), P("y^2", kXY)));
  EXPECT_EQ(g * RationalFunction(P("y^2", kXY)), RationalFunction(P("y + 1", kXY)));
}

}  // namespace
