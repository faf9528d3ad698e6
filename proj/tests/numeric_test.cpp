#include <gtest/gtest.h>

#include <random>

#include "pmc/numeric/lab.hpp"

using namespace pmc;

namespace {

ComplexF C(long re, long im = 0) { return {Real(re), Real(im)}; }

NumericPoint pi4(const char* rho, const char* b) {
  return parse_point(std::string("alpha=pi/4,a=0,rho=") + rho + ",b=" + b);
}

Real eps(const char* text) { return Real(text); }

}  // namespace

TEST(Cubic, UnitRoots) {
  auto r = solve_cubic(C(1), C(0), C(0), C(-1));
  const Real h = boost::multiprecision::sqrt(Real(3)) / 2;
  EXPECT_LT(magnitude(r.roots[0] - ComplexF(Real(-0.5), -h)), eps("1e-30"));
  EXPECT_LT(magnitude(r.roots[1] - ComplexF(Real(-0.5), h)), eps("1e-30"));
  EXPECT_LT(magnitude(r.roots[2] - C(1)), eps("1e-30"));
}

TEST(Cubic, TripleRoot) {
  auto r = solve_cubic(C(1), C(-3), C(3), C(-1));
  for (const auto& x : r.roots) EXPECT_LT(magnitude(x - C(1)), eps("1e-10"));
}

TEST(Cubic, DegenerateLeadingCoefficient) {
  EXPECT_THROW(solve_cubic(C(0), C(1), C(2), C(3)), DegenerateLeadingCoefficient);
}

TEST(Cubic, RandomRealCubicsCloseUnderConjugation) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int k = 0; k < 1000; ++k) {
    long c3 = d(gen);
    if (c3 == 0) c3 = 1;
    auto r = solve_cubic(C(c3), C(d(gen)), C(d(gen)), C(d(gen)));
    for (const auto& x : r.roots) {
      Real best = 1e9;
      for (const auto& y : r.roots) best = std::min(best, magnitude(y - std::conj(x)));
      EXPECT_LT(best, eps("1e-15")) << k;
    }
    for (const auto& res : r.residuals) EXPECT_LT(res, eps("1e-20")) << k;
  }
}

TEST(Evaluate, CatalogValues) {
  const NumericPoint p = pi4("1", "1");
  EXPECT_LT(magnitude(eval_complex(Catalog::instance().p("p3"), p) - C(-1)), eps("1e-35"));
  NumericPoint q = parse_point("alpha=pi/2,a=0,rho=2,b=1");
  EXPECT_LT(magnitude(eval_complex(Catalog::instance().p("kappa"), q) - C(1)), eps("1e-35"));
}

TEST(Evaluate, CircleRelationAtPrecision) {
  for (const char* tag : {"pi/3", "0.7", "2.9"}) {
    NumericPoint p;
    p.alpha_tag = tag;
    auto [s, c] = p.sin_cos();
    EXPECT_LT(boost::multiprecision::abs(s * s + c * c - 1), eps("1e-30")) << tag;
  }
}

TEST(Evaluate, PoleNearPoint) {
  NumericPoint p = parse_point("alpha=pi/4,a=-1,rho=1,b=1");
  EXPECT_THROW(eval_complex(Catalog::instance().p("p3"), p), PoleNearPoint);
}

TEST(P23, ResidualsAtUnitPoint) {
  auto cubic = cubic_at(pi4("1", "1"), cubic_coeffs());
  EXPECT_TRUE(cubic.real_coefficients);
  auto r = solve_cubic(cubic.coeffs[0], cubic.coeffs[1], cubic.coeffs[2], cubic.coeffs[3]);
  for (const auto& res : r.residuals) EXPECT_LT(res, eps("1e-25"));
}

TEST(P23, AllRealRootsAtPositiveRho) {
  EXPECT_THROW(p23_candidates(pi4("1", "1")), AllRootsReal);
}

TEST(P23, ConjugatePairAtNegativeRho) {
  auto cands = p23_candidates(pi4("-2", "1"));
  ASSERT_EQ(cands.size(), 2u);
  EXPECT_LT(magnitude(cands[0].P - std::conj(cands[1].P)), eps("1e-25"));
  for (const auto& v : G_at(pi4("-2", "1"))) {
    ASSERT_TRUE(v.G.has_value()) << v.error;
    EXPECT_TRUE(is_finite(*v.G));
    EXPECT_GT(magnitude(*v.G), Real(1e-8));
  }
}

TEST(Scan, FAtPi4IsExactAndNonzero) {
  auto rows = nonvanishing_scan(ScanTarget::F, default_grid());
  ASSERT_EQ(rows.size(), 15u);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.exact);
    EXPECT_TRUE(row.nonzero) << row.point.str();
  }
  EXPECT_EQ(rows[10].value, "15/8");  // rho = 1, b = 1
}

TEST(Grid, ParseAndErrors) {
  auto g = parse_grid("# comment\npi/4, 0, 0, 1, 1\n1/2,1,-1,2,3\n");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_TRUE(g[1].t.has_value());
  EXPECT_EQ(g[1].a_im, -1);
  EXPECT_THROW(parse_grid("pi/4,0,0,1\n"), ConfigError);
  EXPECT_THROW(parse_point("alpha=pi/4,zz=1"), ConfigError);
}

TEST(Ode, Rk4ConvergesAtFourthOrder) {
  auto orders = rk4_orders(Real(0.6), ComplexF(Real(0.1), Real(0.2)), Real(1.4), Real(0.1), 1, 1);
  for (double o : orders) {
    EXPECT_GT(o, 3.7);
    EXPECT_LT(o, 4.3);
  }
}

TEST(Ode, TrajectorySatisfiesFirstOrderEquation) {
  const TrigRational p2 = Catalog::instance().p("p2").materialize();
  auto traj = ode_integrate(Real(0.8), ComplexF(Real(0.05), Real(-0.1)), Real(1.2), Real(0.001), 1, 2);
  const Real h = traj.step;
  for (std::size_t k = 100; k + 1 < traj.samples.size(); k += 100) {
    const auto& [alpha, a] = traj.samples[k];
    ComplexF fd = (traj.samples[k + 1].second - traj.samples[k - 1].second) / (2 * h);
    const std::array<ComplexF, 6> v = {ComplexF(boost::multiprecision::sin(alpha)),
                                       ComplexF(boost::multiprecision::cos(alpha)), a, std::conj(a), C(1), C(2)};
    auto [num, den] = p2.evaluate_parts<ComplexF>(v, ComplexTraits::from);
    EXPECT_LT(magnitude(fd - num / den), eps("1e-5")) << k;
  }
}

TEST(Ode, CrossesRightAngle) {
  auto traj = ode_integrate(Real(1.2), C(0), Real(1.9), Real(0.01), 1, 1);
  EXPECT_EQ(traj.samples.back().first, Real(1.9));
  EXPECT_TRUE(is_finite(traj.samples.back().second));
  EXPECT_THROW(ode_integrate(Real(0), C(0), Real(1), Real(0), 1, 1), ConfigError);
}

TEST(Config, PrecisionBounds) {
  EXPECT_THROW(set_precision_bits(8), ConfigError);
  EXPECT_THROW(set_precision_bits(5000), ConfigError);
  EXPECT_EQ(numeric_config().precision_bits, 128u);
}
