#include <gtest/gtest.h>

#include "nops/diffop.hpp"
#include "test_util.hpp"

using namespace nops;
using nops::testutil::I;
using nops::testutil::P;

namespace {

const VarList kXY{"x", "y"};

DiffOp Op(const char* text) { return parse_operator(text, kXY); }

TEST(Apply, Examples) {
  EXPECT_EQ(apply(Op("dx"), P("x^2", kXY)), P("2*x", kXY));
  EXPECT_EQ(apply(Op("y*dx*dy"), P("x^2*y", kXY)), P("2*x*y", kXY));
  Polynomial f = P("x^3 + x*y - 4", kXY);
  EXPECT_EQ(apply(Op("1"), f), f);
  EXPECT_EQ(apply(Op("1").with_modulus(I("(x)", kXY)), f), P("-4", kXY));
}

TEST(Apply, VariableMismatchThrows) {
  EXPECT_THROW(apply(Op("dx"), parse_polynomial("x", VarList{"x"})), Error);
}

TEST(Bracket, Examples) {
  EXPECT_EQ(bracket(Op("dx"), P("x", kXY)), Op("1"));
  EXPECT_TRUE(bracket(Op("dx"), P("y", kXY)).is_zero());
  EXPECT_EQ(bracket(Op("dx*dy"), P("x", kXY)), Op("dy"));
  EXPECT_TRUE(bracket(Op("x^2 + 3"), P("x*y", kXY)).is_zero());
}

TEST(Bracket, MatchesDefinitionOnSamples) {
  Rng rng(11);
  DiffOp op = Op("y*dx^2 + x*dx*dy - dy + 2");
  for (int k = 0; k < 30; ++k) {
    Polynomial f = random_polynomial(rng, 2, 3), g = random_polynomial(rng, 2, 4);
    EXPECT_EQ(apply(bracket(op, f), g), apply(op, f * g) - f * apply(op, g));
  }
}

TEST(Order, Examples) {
  EXPECT_EQ(order(Op("dx^2 + y*dx")), 2u);
  EXPECT_EQ(order(DiffOp::multiplication(P("x", kXY))), 0u);
  EXPECT_EQ(order(Op("dx").with_modulus(I("(x)", kXY))), 1u);
  EXPECT_EQ(order(Op("x*dx^3 + dy").with_modulus(I("(x)", kXY))), 1u);  // x*dx^3 vanishes mod (x)
  EXPECT_EQ(order(DiffOp(2)), 0u);
}

TEST(Parse, OperatorTextRoundTrip) {
  for (const char* text : {"y*dx*dy + 1", "dx^2", "1", "dx + dy", "(x + 1)*dy - 1/2*dx^2", "-dx"}) {
    DiffOp op = Op(text);
    EXPECT_EQ(Op(to_string(op, kXY).c_str()), op) << text << " -> " << to_string(op, kXY);
  }
  EXPECT_EQ(to_string(Op("dx^2"), kXY), "dx^2");
  EXPECT_EQ(to_string(parse_operator_list("1; dx", kXY), kXY), "1; dx");
}

TEST(Properties, ApplyIsLinear) {
  Rng rng(5);
  DiffOp op = Op("x*dx^2 - y*dy + 3*dx*dy");
  for (int k = 0; k < 50; ++k) {
    Polynomial f = random_polynomial(rng, 2, 5), g = random_polynomial(rng, 2, 5);
    Rational a(k - 20, 3), b(7, k + 1);
    a.canonicalize();
    b.canonicalize();
    EXPECT_EQ(apply(op, f.scaled(a) + g.scaled(b)), apply(op, f).scaled(a) + apply(op, g).scaled(b));
  }
}

TEST(Properties, BracketDropsOrder) {
  Rng rng(9);
  for (int k = 0; k < 40; ++k) {
    DiffOp op(2);
    for (const auto& alpha : monomials_up_to(2, 3)) op.add_term(alpha, random_polynomial(rng, 2, 2, 2));
    if (order(op) == 0) continue;
    for (std::size_t v = 0; v < 2; ++v) EXPECT_LT(order(bracket(op, Polynomial::variable(2, v))), order(op));
  }
}

TEST(Properties, DeterminedByLowDegreeMonomials) {
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    DiffOp op(2);
    for (const auto& alpha : monomials_up_to(2, 2)) op.add_term(alpha, random_polynomial(rng, 2, 2, 2));
    unsigned d = order(op);
    DiffOp rebuilt = from_monomial_values(2, d, [&](const Monomial& b) { return apply(op, Polynomial(b, Rational(1))); });
    EXPECT_EQ(rebuilt, op);
  }
}

TEST(OrderLemma, ProjectedDerivativeInNonreducedRing) {
  // R = Q[x,y]/(x^2), delta = pi o dx, J = (x - y), image I = (y).
  IdealHandle rad = I("(x)", kXY);
  auto res = check_order_lemma(Op("dx").with_modulus(rad), I("(x - y)", kXY), I("(y)", kXY), 2, 100, 1);
  EXPECT_TRUE(res.passed);
  EXPECT_EQ(res.samples, 100u);
}

TEST(OrderLemma, ProjectionOfPowers) {
  IdealHandle rad = I("(x)", kXY);
  auto res = check_order_lemma(Op("1").with_modulus(rad), I("(x - y; y^2)", kXY), I("(y)", kXY), 3, 100, 2);
  EXPECT_TRUE(res.passed);
}

TEST(OrderLemma, SecondDerivativeAmbient) {
  auto res = check_order_lemma(Op("dx^2"), I("(x)", kXY), I("(x)", kXY), 1, 100, 3);
  EXPECT_TRUE(res.passed);
}

TEST(OrderLemma, DetectsWrongOrderClaim) {
  // Sanity check of the checker: with t too large relative to J^(e+t) it must
  // still pass, but asking for membership in I^(t+1) fails on some sample.
  auto res = check_order_lemma(Op("dx^2"), I("(x)", kXY), I("(x^2)", kXY), 1, 50, 3);
  EXPECT_FALSE(res.passed);
  ASSERT_TRUE(res.witness.has_value());
}

}  // namespace
