#include <gtest/gtest.h>

#include "pmc/kernel/quadratic.hpp"
#include "properties.hpp"

using namespace pmc;

namespace {

TrigRational V(Var v) { return TrigRational::var(v); }
GaussianRational q(long n, long d = 1) { return GaussianRational(Rational(n, d)); }

}  // namespace

TEST(GaussianRational, FieldOperations) {
  GaussianRational z(Rational(1, 2), Rational(3));
  EXPECT_EQ(z * z.conj(), q(37, 4));
  EXPECT_EQ(z / z, q(1));
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), q(-1));
  EXPECT_EQ(z.str(), "1/2+3*i");
}

TEST(GaussianRational, ParseRational) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
}

TEST(Polynomial, CircleRelation) {
  Polynomial s = Polynomial::var(Var::s), c = Polynomial::var(Var::c);
  EXPECT_EQ((s * s + c * c).reduce_circle(), Polynomial(1));
  EXPECT_EQ(TrigRational(s * s + c * c - Polynomial(1)), TrigRational());
}

TEST(Polynomial, ConjugationSwapsAAndAbar) {
  Polynomial p = Polynomial::term(Monomial::var(Var::a, 2), GaussianRational::i()) + Polynomial::var(Var::rho);
  Polynomial expected = Polynomial::term(Monomial::var(Var::abar, 2), -GaussianRational::i()) + Polynomial::var(Var::rho);
  EXPECT_EQ(p.conjugate(), expected);
}

TEST(Monomial, ExponentOverflowThrows) {
  EXPECT_THROW(Monomial::var(Var::a, 1000), Error);
}

TEST(TrigRational, CommonFactorCancels) {
  TrigRational a = V(Var::a), b = V(Var::b);
  TrigRational e = (a * a - b * b) / (a + b);
  EXPECT_TRUE(e.is_polynomial());
  EXPECT_TRUE(equals(e, a - b));
}

TEST(TrigRational, ZeroDenominator) {
  EXPECT_THROW(TrigRational(1) / TrigRational(), ZeroDenominator);
  TrigRational s = V(Var::s), c = V(Var::c);
  EXPECT_THROW(TrigRational(1) / (s * s + c * c - TrigRational(1)), ZeroDenominator);
}

TEST(TrigRational, AlphaDerivativeOfSinCos) {
  EXPECT_TRUE(equals(V(Var::s).differentiate(DiffVar::alpha), V(Var::c)));
  EXPECT_TRUE(equals(V(Var::c).differentiate(DiffVar::alpha), -V(Var::s)));
  TrigRational cot = V(Var::c) / V(Var::s);
  EXPECT_TRUE(equals(cot.differentiate(DiffVar::alpha), TrigRational(-1) / (V(Var::s) * V(Var::s))));
}

TEST(TrigRational, WirtingerDerivatives) {
  TrigRational a = V(Var::a), ab = V(Var::abar);
  EXPECT_TRUE(equals((a * ab).differentiate(DiffVar::a), ab));
  EXPECT_TRUE(equals((a * ab).differentiate(DiffVar::abar), a));
  EXPECT_TRUE(V(Var::rho).differentiate(DiffVar::a).is_zero());
}

TEST(TrigRational, ExactEvaluation) {
  const SamplePoint p = sample_point(0);
  EXPECT_EQ(p.s(), Rational(4, 5));
  EXPECT_EQ(p.c(), Rational(3, 5));
  TrigRational e = V(Var::s) / (V(Var::b) + V(Var::a));
  EXPECT_EQ(e.evaluate(p.values()), q(4, 5) / GaussianRational(Rational(4, 3), Rational(1, 5)));
}

TEST(TrigRational, SampledZeroTestFindsWitness) {
  auto v = is_zero_sampled(V(Var::a) - V(Var::abar), 10, 0);
  EXPECT_FALSE(v.probably_zero);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(is_zero_sampled(TrigRational(), 10, 0).probably_zero);
}

TEST(Budget, OverflowIsReported) {
  TrigRational e = V(Var::a) + V(Var::b) + V(Var::rho) + V(Var::s);
  budget::Scope scope(50);
  EXPECT_THROW(e.pow(8), ReductionOverflow);
}

TEST(Budget, ScopeRestores) {
  {
    budget::Scope scope(3);
    EXPECT_EQ(budget::current_limit(), 3u);
  }
  EXPECT_EQ(budget::current_limit(), budget::kUnlimited);
}

TEST(Formula, MaterializeMatchesDirectArithmetic) {
  Formula a = Formula::var(Var::a), b = Formula::var(Var::b);
  Formula f = (a * a - b * b) / (a + b);
  EXPECT_TRUE(equals(f.materialize(), V(Var::a) - V(Var::b)));
  Formula g = (a * b.conj()).diff(DiffVar::a);
  EXPECT_TRUE(equals(g.materialize(), V(Var::b)));
  Evaluator<GaussianRational> ev(sample_point(3).values());
  EXPECT_EQ(ev.eval(f), f.materialize().evaluate(sample_point(3).values()));
}

TEST(QuadExt, Arithmetic) {
  using Q = QuadExt<GaussianRational>;
  Q x(q(1), q(1), 2), y(q(1), q(-1), 2);
  EXPECT_EQ(x * y, Q(-1));
  EXPECT_EQ(x / x, Q(1));
  EXPECT_THROW(x + Q(q(0), q(1), 3), DomainError);
  auto [s, c] = special_sin_cos<GaussianRational>(SpecialAngle::Pi3);
  EXPECT_EQ(s * s + c * c, Q(1));
}

TEST(Properties, NormalizeIsIdempotent) {
  auto o = props::normalize_idempotent(1000, 11);
  EXPECT_TRUE(o.ok) << o.witness;
  EXPECT_EQ(o.cases, 1000u);
}

TEST(Properties, ConjugationIsAnInvolution) {
  auto o = props::conjugation_involution(1000, 12);
  EXPECT_TRUE(o.ok) << o.witness;
}

TEST(Properties, LeibnizAndChainRules) {
  auto o = props::derivative_rules(1000, 13);
  EXPECT_TRUE(o.ok) << o.witness;
}

TEST(Properties, XYRewriteConfluence) {
  auto o = props::xy_confluence(100, 14);
  EXPECT_TRUE(o.ok) << o.witness;
}

TEST(Properties, ExactFloatCoherence) {
  Real worst;
  auto o = props::exact_float_coherence(500, 15, &worst);
  EXPECT_TRUE(o.ok) << o.witness;
  EXPECT_LT(worst, Real("1e-25"));
}

TEST(Examples, CanonicalForms) {
  TrigRational s = V(Var::s), c = V(Var::c), a = V(Var::a), b = V(Var::b);
  EXPECT_EQ(c * c, TrigRational(1) - s * s);
  EXPECT_EQ((TrigRational(2) * a + TrigRational(2) * b) / TrigRational(2), a + b);
  EXPECT_TRUE(equals(s * s, TrigRational(1) - c * c));
  EXPECT_EQ((TrigRational(GaussianRational::i()) * a).conjugate(),
            TrigRational(-GaussianRational::i()) * V(Var::abar));
}

TEST(Examples, SamplePoints) {
  EXPECT_EQ(sample_point(17), sample_point(17));
  TrigRational circle = V(Var::s) * V(Var::s) + V(Var::c) * V(Var::c) - TrigRational(1);
  for (std::uint64_t k = 0; k < 50; ++k) {
    EXPECT_NE(sample_point(k).s(), 0);
    const SamplePoint p = sample_point(k);
    EXPECT_EQ(p.s() * p.s() + p.c() * p.c(), 1);
  }
  EXPECT_TRUE(is_zero_sampled(circle, 20, 0).probably_zero);
  auto v = is_zero_sampled(V(Var::s), 5, 0);
  EXPECT_FALSE(v.probably_zero);
  EXPECT_EQ(v.evaluated, 1u);
}
