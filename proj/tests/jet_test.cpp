#include <gtest/gtest.h>

#include <algorithm>

#include "pmc/jet/testers.hpp"

using namespace pmc;

namespace {

using J = JetPoly<TrigRational>;

const JetRules<TrigRational>& rules() {
  static const JetRules<TrigRational> r = materialized_rules();
  return r;
}

TrigRational V(Var v) { return TrigRational::var(v); }
J X() { return J::sym(Sym::X); }
J Y() { return J::sym(Sym::Y); }
bool same(const J& x, const J& y) { return (x - y).is_zero(); }

bool has_note(const ZeroTester& z, const std::string& text) {
  return std::find(z.notes.begin(), z.notes.end(), text) != z.notes.end();
}

const ReplayCheck& replay(const std::string& id) {
  static const auto checks = replay_checks();
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw UnknownId(id);
}

}  // namespace

TEST(JetOperators, BetaDerivativeOfA) {
  EXPECT_TRUE(same(d_beta_ik(J(V(Var::a)), RewriteLevel::Base, rules()), X() - J(rules().p2)));
  EXPECT_TRUE(d_beta_ik(J(V(Var::rho)), RewriteLevel::Base, rules()).is_zero());
}

TEST(JetOperators, BetaDerivativeOfProduct) {
  const J got = d_beta_ik(J(V(Var::a) * V(Var::abar)), RewriteLevel::Base, rules());
  const J expected = J(V(Var::abar)) * (X() - J(rules().p2)) - J(V(Var::a)) * (Y() - J(rules().p2.conjugate()));
  EXPECT_TRUE(same(got, expected));
}

TEST(JetOperators, AlphaDerivative) {
  EXPECT_TRUE(same(d_alpha_total(J(V(Var::a)), RewriteLevel::Base, rules()), X()));
  const J circle(V(Var::s) * V(Var::s) + V(Var::c) * V(Var::c));
  EXPECT_TRUE(d_alpha_total(circle, RewriteLevel::Base, rules()).is_zero());
}

TEST(JetOperators, XYRuleAtClosedLevel) {
  const auto& r = rules();
  const J xy = reduce_jet(X() * Y(), RewriteLevel::Closed, r);
  EXPECT_TRUE(same(xy, J(r.p7) * X() + J(r.p7.conjugate()) * Y() + J(r.p8)));

  const TrigRational p7 = r.p7, p7b = r.p7.conjugate(), p8 = r.p8;
  const J xy2 = reduce_jet(X() * Y() * Y(), RewriteLevel::Closed, r);
  const J expected = J(p7 * p7) * X() + J(p7b) * Y() * Y() + J(p7 * p7b + p8) * Y() + J(p7 * p8);
  EXPECT_TRUE(same(xy2, expected));
}

TEST(JetOperators, XYRewriteOrdersAgree) {
  const J e = X() * X() * Y() * Y();
  EXPECT_TRUE(same(reduce_jet(e, RewriteLevel::Closed, rules(), XYOrder::Greedy),
                   reduce_jet(e, RewriteLevel::Closed, rules(), XYOrder::Grouped)));
}

TEST(JetOperators, BaseLevelRejectsAAlpha) {
  EXPECT_THROW(d_beta_ik(X(), RewriteLevel::Base, rules()), UnsupportedSymbol);
}

class ReplaySymbolic : public ::testing::TestWithParam<std::string> {};

TEST_P(ReplaySymbolic, PassesWithZeroResidual) {
  SymbolicTester z;
  EXPECT_TRUE(replay(GetParam()).run(z)) << z.witness;
  EXPECT_EQ(z.residual_terms, 0u);
}

INSTANTIATE_TEST_SUITE_P(Jet, ReplaySymbolic,
                         ::testing::Values("closure-cw", "cbar-cbeta", "abeta-alpha", "xy-alpha", "xy-beta",
                                           "second-order-coeffs", "abeta-alpha-closed", "cubic-elim", "branch-F",
                                           "p18-diag"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST(Replay, SampledModeMatchesSymbolicVerdicts) {
  for (const auto& c : replay_checks()) {
    SampledTester z(100, 7);
    EXPECT_EQ(c.run(z), c.id != "mixed-partial-residual") << c.id << ": " << z.witness;
  }
}

// The mixed-partial difference: X^3, Y^2, X^2, X and constant coefficients agree
// with the catalog; its Y coefficient is identically zero while p18 is not.
TEST(Replay, MixedPartialResidualLocalization) {
  SymbolicTester z;
  EXPECT_FALSE(replay("mixed-partial-residual").run(z));
  EXPECT_TRUE(has_note(z, "X^2 of residual vs p16: match"));
  EXPECT_TRUE(has_note(z, "X of residual vs p17: match"));
  EXPECT_TRUE(has_note(z, "1 of residual vs p19: match"));
  EXPECT_TRUE(has_note(z, "Y of residual vs p18: mismatch"));

  SymbolicTester diag;
  EXPECT_TRUE(replay("p18-diag").run(diag));
  EXPECT_TRUE(has_note(diag, "printed p18 vanishes: no"));
}

TEST(Replay, SymbolicBudgetOverflows) {
  SymbolicTester z(100);
  EXPECT_THROW(replay("cubic-elim").run(z), ReductionOverflow);
}
