#include <gtest/gtest.h>

#include "nops/closures.hpp"
#include "test_util.hpp"

using namespace nops;
using nops::testutil::I;
using nops::testutil::P;

namespace {

const VarList kYZ{"y", "z"};
const VarList kXY{"x", "y"};
const VarList kXYZ{"x", "y", "z"};
const VarList kABC{"a", "b", "c"};

Monomial M(const char* text, const VarList& vars) { return monomial_of(P(text, vars)); }

TEST(IntegralClosure, TwoCubes) {
  auto c = monomial_integral_closure(I("(y^3; z^3)", kYZ), 1);
  EXPECT_EQ(to_string(c, kYZ), "(y^3; y^2*z; y*z^2; z^3)");
}

TEST(IntegralClosure, PrincipalPower) {
  EXPECT_EQ(to_string(monomial_integral_closure(I("(y^2)", kYZ), 3), kYZ), "(y^6)");
}

TEST(IntegralClosure, AlreadyClosed) {
  auto ideal = I("(y^4; z)", kYZ);
  EXPECT_TRUE(ideal_equal(monomial_integral_closure(ideal, 1), ideal));
}

TEST(IntegralClosure, RejectsNonMonomial) {
  EXPECT_THROW(monomial_integral_closure(I("(y + z)", kYZ), 1), Error);
  EXPECT_THROW(monomial_integral_closure(I("(y)", kYZ), 0), Error);
}

TEST(IntegralClosure, FacetsOfTwoCubes) {
  NewtonPolyhedron poly({M("y^3", kYZ), M("z^3", kYZ)});
  EXPECT_TRUE(poly.contains(M("y^2*z", kYZ)));
  EXPECT_FALSE(poly.contains(M("y*z", kYZ)));
  EXPECT_TRUE(poly.contains(M("y^3*z^3", kYZ), 2));
  EXPECT_FALSE(poly.contains(M("y^5", kYZ), 2));
}

TEST(Oracle, Examples) {
  auto ideal = I("(y^3; z^3)", kYZ);
  EXPECT_TRUE(monomial_closure_bruteforce_oracle(ideal, M("y^2*z", kYZ), 3));
  EXPECT_FALSE(monomial_closure_bruteforce_oracle(ideal, M("y*z", kYZ), 10));
  EXPECT_TRUE(monomial_closure_bruteforce_oracle(ideal, M("z^3", kYZ), 1));
}

const char* kMonomialIdeals[] = {"(y^3; z^3)", "(y^2; z^5)", "(y^4; y*z; z^3)", "(y^2*z; y*z^3)",
                                 "(y^5; y^2*z^2; z^4)", "(y)", "(y^2; z^2)"};

class ClosureProperties : public ::testing::TestWithParam<const char*> {};

TEST_P(ClosureProperties, OracleAgreesOnGenerators) {
  auto ideal = I(GetParam(), kYZ);
  auto closure = monomial_integral_closure(ideal, 1);
  for (const auto& g : monomial_generators(closure))
    EXPECT_TRUE(monomial_closure_bruteforce_oracle(ideal, g, 6)) << to_string(Polynomial(g, 1), kYZ);
}

TEST_P(ClosureProperties, OracleAgreesOnRandomMonomials) {
  auto ideal = I(GetParam(), kYZ);
  NewtonPolyhedron poly(monomial_generators(ideal));
  Rng rng(5);
  std::uniform_int_distribution<unsigned> exp(0, 6);
  int outside = 0;
  for (int k = 0; k < 400 && outside < 20; ++k) {
    Monomial m{exp(rng), exp(rng)};
    bool in = poly.contains(m);
    if (!in) ++outside;
    EXPECT_EQ(in, monomial_closure_bruteforce_oracle(ideal, m, 6)) << to_string(Polynomial(m, 1), kYZ);
  }
}

TEST_P(ClosureProperties, ExtensiveAndIdempotent) {
  auto ideal = I(GetParam(), kYZ);
  auto closure = monomial_integral_closure(ideal, 1);
  EXPECT_TRUE(ideal_subset(ideal, closure));
  EXPECT_TRUE(ideal_equal(monomial_integral_closure(closure, 1), closure));
}

TEST_P(ClosureProperties, PowerOfClosureInClosureOfPower) {
  auto ideal = I(GetParam(), kYZ);
  auto closure = monomial_integral_closure(ideal, 1);
  for (unsigned m = 2; m <= 3; ++m)
    EXPECT_TRUE(ideal_subset(ideal_power(closure, m), monomial_integral_closure(ideal, m))) << m;
}

INSTANTIATE_TEST_SUITE_P(Monomial, ClosureProperties, ::testing::ValuesIn(kMonomialIdeals));

TEST(IntegralClosure, ThreeVariables) {
  auto ideal = I("(x^2; y^2; z^2)", kXYZ);
  auto closure = monomial_integral_closure(ideal, 1);
  EXPECT_TRUE(ideal_equal(closure, ideal_power(I("(x; y; z)", kXYZ), 2)));
  for (const auto& g : monomial_generators(closure)) EXPECT_TRUE(monomial_closure_bruteforce_oracle(ideal, g, 4));
}

TEST(SymbolicPower, VariablePrime) {
  const VarList vars{"y", "z", "w"};
  auto p = I("(y; z)", vars);
  auto s = symbolic_power(p, 2, P("w", vars));
  EXPECT_TRUE(ideal_equal(s, ideal_power(p, 2)));
}

TEST(SymbolicPower, Principal) {
  const VarList vars{"y"};
  EXPECT_TRUE(ideal_equal(symbolic_power(I("(y)", vars), 3, P("1", vars)), I("(y^3)", vars)));
}

TEST(SymbolicPower, MonomialCurve) {
  auto p = I("(b^2 - a*c; b*c - a^3; c^2 - a^2*b)", kABC);
  auto s = symbolic_power(p, 2, P("a", kABC));
  EXPECT_TRUE(ideal_subset(ideal_power(p, 2), s));
  EXPECT_FALSE(ideal_equal(s, ideal_power(p, 2)));
  EXPECT_TRUE(ideal_equal(symbolic_power(p, 1, P("a", kABC)), p));
}

TEST(SymbolicPower, WitnessInPrime) {
  EXPECT_THROW(symbolic_power(I("(y; z)", kYZ), 2, P("y", kYZ)), Error);
}

RingSpec DoubleLine() { return {kXY, I("(x^2)", kXY), I("(x)", kXY), {I("(x)", kXY)}}; }

TEST(BsHarness, SquareFamily) {
  auto ring = DoubleLine();
  auto ops = make_operator_set(parse_operator_list("1; dx", kXY), ring.radical);
  auto rep = bs_harness({{"J", I("(y^2; x*y)", kXY)}}, ops, ring, 3, 3, 12);
  for (const auto& row : rep.rows) EXPECT_EQ(row.c_min, 0u) << row.n;
}

TEST(BsHarness, ClosedImageMatchesPowers) {
  auto ring = DoubleLine();
  auto ops = make_operator_set(parse_operator_list("1; dx", kXY), ring.radical);
  auto a = bs_harness({{"J", I("(y)", kXY)}}, ops, ring, 3, 3, 10);
  auto b = find_min_c(I("(y)", kXY), ops, ring, 3, 3, 10);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].c_min, b.rows[i].c_min);
}

TEST(BsHarness, DominatesArtinReesRows) {
  auto ring = DoubleLine();
  auto ops = make_operator_set(parse_operator_list("1; dx", kXY), ring.radical);
  for (const char* j : {"(x - y)", "(y^2; x*y)", "(x; y^3)"}) {
    auto a = bs_harness({{"J", I(j, kXY)}}, ops, ring, 2, 4, 10);
    auto b = find_min_c(I(j, kXY), ops, ring, 2, 4, 10);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      ASSERT_TRUE(a.rows[i].c_min && b.rows[i].c_min) << j;
      EXPECT_GE(*a.rows[i].c_min, *b.rows[i].c_min) << j;
    }
  }
}

TEST(BsHarness, RejectsNonMonomialImage) {
  auto ring = DoubleLine();
  auto ops = make_operator_set(parse_operator_list("1; dx", kXY), ring.radical);
  EXPECT_THROW(bs_harness({{"J", I("(y^2 + y)", kXY)}}, ops, ring, 1, 1, 6), Error);
}

TEST(SymbHarness, LineReproducesArtinReesConstant) {
  auto ring = DoubleLine();
  auto ops = make_operator_set(parse_operator_list("1; dx", kXY), ring.radical);
  auto rep = symb_harness({{"J", I("(x - y)", kXY)}}, ops, ring, 1, {P("1", kXY)}, 3, 3, 12);
  for (const auto& row : rep.rows) EXPECT_EQ(row.c_min, 1u) << row.n;
}

TEST(SymbHarness, PlaneSchedule) {
  RingSpec ring{kXYZ, I("(x^2)", kXYZ), I("(x)", kXYZ), {I("(x)", kXYZ)}};
  auto ops = make_operator_set(parse_operator_list("1; dx", kXYZ), ring.radical);
  auto rep = symb_harness({{"J", I("(x - y; z)", kXYZ)}}, ops, ring, 2, {P("1", kXYZ)}, 2, 3, 6);
  ASSERT_EQ(rep.rows.size(), 2u);
  for (const auto& row : rep.rows) EXPECT_TRUE(row.c_min) << row.n;
}

}  // namespace
