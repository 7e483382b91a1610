#include <gtest/gtest.h>

#include "nops/uniformity.hpp"
#include "test_util.hpp"

using namespace nops;
using nops::testutil::I;
using nops::testutil::P;

namespace {

const VarList kXY{"x", "y"};

RingSpec DoubleLine() { return {kXY, I("(x^2)", kXY), I("(x)", kXY), {I("(x)", kXY)}}; }
RingSpec TripleLine() { return {kXY, I("(x^3)", kXY), I("(x)", kXY), {I("(x)", kXY)}}; }

OperatorSet Ops(const char* text, const RingSpec& ring) {
  return make_operator_set(parse_operator_list(text, ring.vars), ring.radical);
}

TruncatedSubspace Span(const std::vector<Polynomial>& gens, unsigned d) {
  TruncatedSubspace s(2, d);
  for (const auto& g : gens) s.insert(g);
  return s;
}

TEST(Subspace, CanonicalForm) {
  auto a = Span({P("x + y", kXY), P("y", kXY)}, 2);
  auto b = Span({P("x", kXY), P("2*x - y", kXY)}, 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dimension(), 2u);
  EXPECT_TRUE(a.contains(P("3*x - y", kXY)));
  EXPECT_FALSE(a.contains(P("x^2", kXY)));
  EXPECT_THROW(a.insert(P("x^3", kXY)), Error);
}

TEST(DiffColon, DoubleLineCube) {
  auto ring = DoubleLine();
  auto s = diff_colon(I("(y)", kXY), 3, Ops("1; dx", ring), ring, 4);
  std::vector<Polynomial> want = {P("y^3", kXY), P("y^4", kXY), P("x*y^3", kXY)};
  for (const auto& m : monomials_up_to(2, 2)) want.push_back(P("x^2", kXY).mul_term(m, Rational(1)));
  EXPECT_EQ(s, Span(want, 4));
  // x*y^4 has degree 5 and lies outside P_{<=4}.
}

TEST(DiffColon, ZeroPowerIsEverything) {
  auto ring = DoubleLine();
  auto s = diff_colon(I("(y)", kXY), 0, Ops("1; dx", ring), ring, 3);
  EXPECT_EQ(s, TruncatedSubspace::full(2, 3));
}

TEST(DiffColon, ProjectionOnly) {
  auto ring = DoubleLine();
  auto s = diff_colon(I("(y)", kXY), 1, Ops("1", ring), ring, 2);
  EXPECT_EQ(s, Span({P("y", kXY), P("y^2", kXY), P("x*y", kXY), P("x", kXY), P("x^2", kXY)}, 2));
}

TEST(DiffColon, ModulusMismatch) {
  auto ring = DoubleLine();
  auto ops = make_operator_set(parse_operator_list("1", kXY), I("(y)", kXY));
  EXPECT_THROW(diff_colon(I("(y)", kXY), 1, ops, ring, 2), Error);
}

TEST(DiffColon, MonotoneInPower) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  for (const char* ideal : {"(y)", "(x; y)", "(y^2 - x)"}) {
    auto img = ring.image_in_reduced(I(ideal, kXY));
    for (unsigned m = 0; m < 4; ++m) {
      auto lo = diff_colon(img, m + 1, ops, ring, 6), hi = diff_colon(img, m, ops, ring, 6);
      EXPECT_TRUE(lo.is_subspace_of(hi)) << ideal << " m=" << m;
    }
  }
}

TEST(DiffColon, AbsorbsDefiningIdeal) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  for (unsigned m = 0; m < 4; ++m) {
    auto s = diff_colon(I("(y)", kXY), m, ops, ring, 5);
    for (const auto& mono : monomials_up_to(2, 3)) EXPECT_TRUE(s.contains(P("x^2", kXY).mul_term(mono, Rational(1))));
  }
}

TEST(SubspaceInIdeal, Examples) {
  auto ring = DoubleLine();
  auto w = subspace_in_ideal(Span({P("y", kXY)}, 2), I("(x - y)", kXY), ring);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, P("y", kXY));
  for (unsigned n = 1; n <= 4; ++n) {
    auto xyn = P("x", kXY) * P("y", kXY).pow(n);
    EXPECT_FALSE(subspace_in_ideal(Span({xyn}, n + 1), ideal_power(I("(x - y)", kXY), n), ring));
  }
  EXPECT_FALSE(subspace_in_ideal(TruncatedSubspace(2, 3), I("(x)", kXY), ring));
}

TEST(FindMinC, TiltedLine) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  auto j = I("(x - y)", kXY);
  auto rep = find_min_c(j, ops, ring, 3, 3, 12, "tilted");
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) {
    ASSERT_TRUE(row.c_min) << row.n;
    EXPECT_EQ(*row.c_min, 1u);
    ASSERT_TRUE(row.witness);
    EXPECT_TRUE(witness_is_exact(row, j, ops, ring, 3, power_schedule(ring.image_in_reduced(j), ring)));
  }
  EXPECT_EQ(*rep.rows[0].witness, P("y", kXY));
  EXPECT_EQ(rep.aggregate(), 1u);
}

TEST(FindMinC, MaximalIdealAndAxis) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  for (const char* ideal : {"(x; y)", "(y)"}) {
    auto rep = find_min_c(I(ideal, kXY), ops, ring, 3, 3, 12);
    for (const auto& row : rep.rows) {
      EXPECT_EQ(row.c_min, 0u) << ideal << " n=" << row.n;
      EXPECT_FALSE(row.witness);
    }
  }
}

TEST(FindMinC, ExhaustionIsReported) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  auto rep = find_min_c(I("(x - y)", kXY), ops, ring, 1, 0, 12);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_FALSE(rep.rows[0].c_min);
  EXPECT_EQ(c_min_text(rep.rows[0], 0), "NOT_FOUND(<=0)");
  EXPECT_EQ(*rep.rows[0].witness, P("y", kXY));
  EXPECT_TRUE(rep.exhausted());
  EXPECT_FALSE(rep.aggregate());
}

TEST(FindMinC, ZeroIdeal) {
  auto ring = DoubleLine();
  auto rep = find_min_c(IdealHandle::zero(2), Ops("1; dx", ring), ring, 2, 2, 6);
  for (const auto& row : rep.rows) EXPECT_EQ(row.c_min, 0u);
}

TEST(FindMinC, ParallelMatchesSerial) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  std::vector<std::pair<std::string, IdealHandle>> fam = {
      {"a", I("(x - y)", kXY)}, {"b", I("(x; y)", kXY)}, {"c", I("(y)", kXY)}, {"d", I("(y^2 + x)", kXY)}};
  auto sched = [&](const IdealHandle& img) { return power_schedule(img, ring); };
  auto serial = constant_grid(fam, ops, ring, 3, 3, 8, 1, sched);
  auto parallel = constant_grid(fam, ops, ring, 3, 3, 8, 4, sched);
  ASSERT_EQ(serial.rows.size(), parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    EXPECT_EQ(serial.rows[i].j_id, parallel.rows[i].j_id);
    EXPECT_EQ(serial.rows[i].n, parallel.rows[i].n);
    EXPECT_EQ(serial.rows[i].c_min, parallel.rows[i].c_min);
    EXPECT_EQ(serial.rows[i].witness, parallel.rows[i].witness);
  }
}

TEST(CheckReverse, Family) {
  auto ring = DoubleLine();
  auto ops = Ops("1; dx", ring);
  for (const char* ideal : {"(x - y)", "(x; y)", "(y)"})
    for (unsigned n = 0; n <= 5; ++n) {
      auto r = check_reverse(I(ideal, kXY), ops, ring, n, 10);
      EXPECT_TRUE(r.passed) << ideal << " n=" << n;
      EXPECT_GT(r.checked, 0u);
    }
}

TEST(CheckReverse, ProjectionOnly) {
  auto ring = DoubleLine();
  for (unsigned n = 0; n <= 3; ++n) EXPECT_TRUE(check_reverse(I("(x - y)", kXY), Ops("1", ring), ring, n, 8).passed);
}

TEST(SeparatingOperator, DoubleLine) {
  auto ring = DoubleLine();
  auto res = separating_operator(I("(0)", kXY), I("(x)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 3, 1);
  ASSERT_TRUE(res.found);
  EXPECT_EQ(res.order, 1u);
  EXPECT_EQ(to_string(res.delta, kXY), "dx");
  ASSERT_TRUE(res.d_value);
  EXPECT_EQ(*res.d_value, RationalFunction(Rational(1)));
  EXPECT_TRUE(res.linearity_passed);
  EXPECT_EQ(res.pairs_tested, 50u);
  EXPECT_TRUE(res.d_consistent);
}

TEST(SeparatingOperator, ProjectionSeparates) {
  auto ring = DoubleLine();
  auto res = separating_operator(I("(x)", kXY), I("(1)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 2, 1);
  ASSERT_TRUE(res.found);
  EXPECT_EQ(res.order, 0u);
  EXPECT_EQ(*res.d_value, RationalFunction(Rational(1)));
  EXPECT_TRUE(res.linearity_passed);
}

TEST(SeparatingOperator, TripleLine) {
  auto ring = TripleLine();
  auto res = separating_operator(I("(0)", kXY), I("(x^2)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 3, 1);
  ASSERT_TRUE(res.found);
  EXPECT_EQ(res.order, 2u);
  EXPECT_EQ(to_string(res.delta, kXY), "dx^2");
  EXPECT_EQ(*res.d_value, RationalFunction(Rational(2)));
  EXPECT_TRUE(res.linearity_passed);
  EXPECT_TRUE(res.d_consistent);
}

TEST(SeparatingOperator, BracketDropsOrder) {
  auto ring = TripleLine();
  auto res = separating_operator(I("(0)", kXY), I("(x^2)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 3, 1);
  ASSERT_TRUE(res.found);
  for (std::size_t v = 0; v < 2; ++v) EXPECT_LT(order(bracket(res.delta, Polynomial::variable(2, v))), res.order);
}

TEST(SeparatingOperator, InconsistentPsiIsRefuted) {
  auto ring = DoubleLine();
  auto res = separating_operator(I("(0)", kXY), I("(x; x*y)", kXY), ring, I("(x)", kXY),
                                 {P("1", kXY), P("1", kXY)}, 2, 1);
  ASSERT_TRUE(res.found);
  EXPECT_FALSE(res.d_consistent);
  EXPECT_EQ(res.inconsistent_generator, P("x*y", kXY));
  auto ok = separating_operator(I("(0)", kXY), I("(x; x*y)", kXY), ring, I("(x)", kXY), {P("1", kXY), P("y", kXY)}, 2, 1);
  EXPECT_TRUE(ok.d_consistent);
}

TEST(SeparatingOperator, SearchLimits) {
  auto ring = TripleLine();
  auto res = separating_operator(I("(0)", kXY), I("(x^2)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 1, 1);
  EXPECT_FALSE(res.found);
  EXPECT_THROW(separating_operator(I("(x)", kXY), I("(x)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 1, 1), Error);
  EXPECT_THROW(separating_operator(I("(y)", kXY), I("(x)", kXY), ring, I("(x)", kXY), {P("1", kXY)}, 1, 1), Error);
}

TEST(Filtration, DoubleLine) {
  auto ring = DoubleLine();
  auto rep = verify_filtration({I("(x^2)", kXY), I("(x)", kXY), I("(1)", kXY)}, {I("(x)", kXY), I("(x)", kXY)}, ring);
  EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures[0]);
  EXPECT_EQ(rep.length, 2u);
}

TEST(Filtration, NotStrict) {
  auto ring = DoubleLine();
  auto rep = verify_filtration({I("(x^2)", kXY), I("(x)", kXY), I("(x)", kXY), I("(1)", kXY)},
                               {I("(x)", kXY), I("(x)", kXY), I("(x)", kXY)}, ring);
  EXPECT_FALSE(rep.passed);
  bool strict = false;
  for (const auto& f : rep.failures) strict = strict || f.find("not strict") != std::string::npos;
  EXPECT_TRUE(strict);
}

TEST(Filtration, TripleLine) {
  auto ring = TripleLine();
  auto rep = verify_filtration({I("(x^3)", kXY), I("(x^2)", kXY), I("(x)", kXY), I("(1)", kXY)},
                               {I("(x)", kXY), I("(x)", kXY), I("(x)", kXY)}, ring);
  EXPECT_TRUE(rep.passed);
}

TEST(Filtration, AnnihilatorFailure) {
  auto ring = TripleLine();
  auto rep = verify_filtration({I("(x^3)", kXY), I("(x)", kXY), I("(1)", kXY)}, {I("(x)", kXY), I("(x)", kXY)}, ring);
  EXPECT_FALSE(rep.passed);
}

}  // namespace
