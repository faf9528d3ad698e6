#include <gtest/gtest.h>

#include "pmc/expr/render.hpp"
#include "pmc/jet/testers.hpp"
#include "pmc/kernel/quadratic.hpp"

using namespace pmc;

namespace {

const Catalog& cat() { return Catalog::instance(); }
TrigRational V(Var v) { return TrigRational::var(v); }
TrigRational m(const char* id) { return cat().p(id).materialize(); }

std::array<GaussianRational, 6> point(Rational s, Rational c, GaussianRational a, Rational rho, Rational b) {
  return {GaussianRational(s), GaussianRational(c), a, a.conj(), GaussianRational(rho), GaussianRational(b)};
}

QuadExt<TrigRational> at_pi4(const TrigRational& e) {
  return specialize<TrigRational>(e, SpecialAngle::Pi4, TrigRational(0), V(Var::rho), V(Var::b));
}

}  // namespace

TEST(Catalog, UnknownIdThrows) {
  EXPECT_THROW(cat().p("p99"), UnknownId);
  EXPECT_TRUE(cat().has("p22"));
  EXPECT_FALSE(cat().anchor("p7").empty());
}

TEST(Catalog, KappaClosedForm) {
  const TrigRational expected = V(Var::a) * V(Var::abar) + V(Var::rho) / TrigRational(2) *
                                                              (TrigRational(-2) + TrigRational(3) * V(Var::s) * V(Var::s));
  EXPECT_TRUE(equals(m("kappa"), expected));
}

TEST(Catalog, P3ParsesFromSurfaceSyntax) {
  EXPECT_TRUE(equals(m("p3"), expr::parse_value("cot(alpha)*(a-b)/(a+b)")));
}

TEST(Catalog, P1VanishesAtRightAngle) {
  EXPECT_TRUE(m("p1").evaluate(point(1, 0, GaussianRational(Rational(1, 3), Rational(1, 2)), 2, 3)).is_zero());
}

TEST(Catalog, P3AtSamplePoint) {
  // t = 1/2: s = 4/5, c = 3/5, so cot = 3/4 and (a - b)/(a + b) = -1 at a = 0.
  EXPECT_EQ(m("p3").evaluate(point(Rational(4, 5), Rational(3, 5), 0, 1, 1)), GaussianRational(Rational(-3, 4)));
}

TEST(Catalog, SpecialValuesAtPi4) {
  auto p3 = at_pi4(m("p3"));
  EXPECT_TRUE(p3.radical_part().is_zero());
  EXPECT_TRUE(equals(p3.rational_part(), TrigRational(-1)));

  auto p2 = at_pi4(m("p2"));
  EXPECT_TRUE(p2.radical_part().is_zero());
  EXPECT_TRUE(equals(p2.rational_part(), TrigRational(GaussianRational(Rational(3, 4))) * V(Var::rho) / V(Var::b)));

  auto F = at_pi4(F_expr().materialize());
  EXPECT_TRUE(F.radical_part().is_zero());
  EXPECT_TRUE(equals(F.rational_part(), TrigRational(GaussianRational(Rational(15, 8))) * V(Var::rho) / V(Var::b)));
}

TEST(Catalog, FormulaAndMaterializedPathsAgree) {
  auto direct = specialize<TrigRational>(F_expr(), SpecialAngle::Pi4, TrigRational(0), V(Var::rho), V(Var::b));
  EXPECT_TRUE(equals(direct.rational_part(), at_pi4(F_expr().materialize()).rational_part()));
}

TEST(Catalog, SwapRule) {
  const TrigRational expected = (V(Var::abar) - V(Var::b)) / (V(Var::abar) + V(Var::b)) * V(Var::c) / V(Var::s);
  EXPECT_TRUE(equals(cat().pbar("p3").materialize(), expected));
  EXPECT_TRUE(equals(cat().pbar("p1").materialize(), m("p1")));
  EXPECT_TRUE(equals(cat().pbar("p8").materialize(), m("p8")));
  EXPECT_TRUE(equals(m("p2").conjugate(), cat().pbar("p2").materialize()));
}

TEST(Catalog, StaticIdentities) {
  EXPECT_TRUE(equals(m("p1") - m("p1").conjugate(), TrigRational()));
  EXPECT_TRUE(m("p3").differentiate(DiffVar::abar).is_zero());
  EXPECT_TRUE(equals(m("p2").differentiate(DiffVar::a).conjugate(), TrigRational(2) * m("p3")));
  EXPECT_TRUE(is_zero_sampled(m("p8") - m("p8").conjugate(), 100, 0).probably_zero);
}

TEST(Catalog, StaticChecksAllPassSymbolically) {
  for (const auto& c : static_checks()) {
    SymbolicTester z;
    EXPECT_TRUE(c.run(z)) << c.id << ": " << z.witness;
    EXPECT_EQ(z.residual_terms, 0u) << c.id;
  }
}

TEST(Catalog, StaticChecksAllPassSampled) {
  for (const auto& c : static_checks()) {
    SampledTester z(20, 5);
    EXPECT_TRUE(c.run(z)) << c.id << ": " << z.witness;
  }
}

TEST(Catalog, RenderRoundTripsEveryEntry) {
  for (const auto& id : cat().ids()) {
    const TrigRational e = m(id.c_str());
    EXPECT_TRUE(equals(expr::parse_value(expr::render(e)), e)) << id;
  }
}
