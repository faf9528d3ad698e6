#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pmc/jet/operators.hpp"

namespace pmc {

/// Decides whether jet polynomials with Formula coefficients vanish. The
/// symbolic implementation materializes coefficients; the sampled one
/// evaluates them at exact rational points.
class ZeroTester {
 public:
  virtual ~ZeroTester() = default;

  /// True when every coefficient vanishes. On failure, adds the residual
  /// size and records a witness.
  virtual bool vanishes(const JetPoly<Formula>& p, const std::string& label) = 0;
  bool vanishes(const Formula& f, const std::string& label) { return vanishes(JetPoly<Formula>(f), label); }

  std::size_t residual_terms = 0;
  std::string witness;
  std::vector<std::string> notes;
};

struct ReplayCheck {
  std::string id;
  std::string anchor;
  std::function<bool(ZeroTester&)> run;
};

namespace detail {

using J = JetPoly<Formula>;

inline J sym(Sym s) { return J::sym(s); }

/// Replaces each occurrence of the product a*b (one factor of each) by `value`.
inline J replace_pair(const J& e, Sym first, Sym second, const J& value) {
  J out = e;
  for (;;) {
    bool found = false;
    J next;
    for (const auto& [m, c] : out.terms()) {
      if (m[first] && m[second]) {
        found = true;
        next += (value * J::term(m.with(first, m[first] - 1).with(second, m[second] - 1), Formula(1))).scaled(c);
      } else {
        next.add_term(m, c);
      }
    }
    if (!found) return out;
    out = next;
  }
}

/// Coefficient of X^k (or Y^k) as a Formula.
inline Formula coeff_of(const J& e, Sym s, unsigned k) { return e.coeff(JetMono::sym(s, k)); }

/// Zero test that leaves the tester's failure record untouched.
inline bool probe(ZeroTester& z, const Formula& f) {
  const std::size_t terms = z.residual_terms;
  const std::string witness = z.witness;
  const bool ok = z.vanishes(f, "probe");
  z.residual_terms = terms;
  z.witness = witness;
  return ok;
}

/// Tries residual - target, then residual + target; records which sign held.
inline bool check_up_to_sign(ZeroTester& z, const J& residual, const J& target, const std::string& label) {
  const std::size_t base_terms = z.residual_terms;
  const std::string base_witness = z.witness;
  std::size_t terms[2];
  std::string witness[2];
  for (int k = 0; k < 2; ++k) {
    const int sign = k ? -1 : 1;
    z.residual_terms = 0;
    z.witness.clear();
    const std::string tag = label + (k ? " (sign -1)" : " (sign +1)");
    if (z.vanishes(k ? residual + target : residual - target, tag)) {
      z.residual_terms = base_terms;
      z.witness = base_witness;
      z.notes.push_back(label + ": sign " + (sign > 0 ? "+1" : "-1"));
      return true;
    }
    terms[k] = z.residual_terms;
    witness[k] = z.witness;
  }
  // Report the sign that left the smaller residual.
  const int best = terms[0] <= terms[1] ? 0 : 1;
  z.residual_terms = base_terms + terms[best];
  z.witness = base_witness.empty() ? witness[best] : base_witness;
  return false;
}

}  // namespace detail

/// Every derivation replay, in registry order.
inline std::vector<ReplayCheck> replay_checks() {
  using detail::J;
  using detail::sym;
  const auto& cat = Catalog::instance();
  const JetRules<Formula> r = catalog_rules();
  const Formula a = Formula::var(Var::a), ab = Formula::var(Var::abar);
  const Formula half(GaussianRational(Rational(1, 2)));
  const Formula &p1 = r.p1, &p2 = r.p2, &p7 = r.p7, &p8 = r.p8, &q = r.q;
  const Formula p7b = p7.conj();
  const Formula p2_a = p2.diff(DiffVar::a), p2_al = p2.diff(DiffVar::alpha);
  const J X = sym(Sym::X), Y = sym(Sym::Y), X2 = sym(Sym::X2), Y2 = sym(Sym::Y2);
  const RewriteLevel first = RewriteLevel::FirstOrder, closed = RewriteLevel::Closed,
                     second = RewriteLevel::SecondOrder;

  std::vector<ReplayCheck> checks;

  checks.push_back({"closure-cw", "closure: cbar c_alpha - a abar_alpha = p4", [=](ZeroTester& z) {
                      // Differentiate |c|^2 = kappa both ways and solve for U = Cbar W, V = C Wbar.
                      const J e = sym(Sym::C) * sym(Sym::Cbar) - J(r.kappa);
                      const J ea = d_alpha_total(e, first, r);
                      const J eb = d_beta_ik(e, first, r);
                      const JetMono U = JetMono::sym(Sym::Cbar) * JetMono::sym(Sym::W);
                      const JetMono V = JetMono::sym(Sym::C) * JetMono::sym(Sym::Wbar);
                      auto rest = [&](const J& p) {
                        J out;
                        for (const auto& [m, c] : p.terms())
                          if (m != U && m != V) out.add_term(m, c);
                        return out;
                      };
                      const J ra = rest(ea), rb = rest(eb);
                      for (const J* part : {&ra, &rb})
                        for (Sym s : {Sym::C, Sym::Cbar, Sym::W, Sym::Wbar})
                          if (part->has(s)) {
                            z.witness = std::string("unexpected symbol ") + sym_name(s) + " outside Cbar*W, C*Wbar";
                            return false;
                          }
                      const Formula ua = ea.coeff(U), va = ea.coeff(V), ub = eb.coeff(U), vb = eb.coeff(V);
                      const Formula det = ua * vb - ub * va;
                      const J u_solved = (rb.scaled(va) - ra.scaled(vb)).scaled(det.inverse());
                      return z.vanishes(u_solved - J(a) * Y - J(cat.p("p4")), "Cbar W - a Y - p4");
                    }});

  checks.push_back({"cbar-cbeta", "cbar (ik c_beta) - a (ik abar_beta) = -p5", [=](ZeroTester& z) {
                      const J dc = d_beta_ik(sym(Sym::C), first, r);
                      const J dab = d_beta_ik(J(ab), first, r);
                      J lhs = reduce_jet(sym(Sym::Cbar) * dc - J(a) * dab, first, r);
                      lhs = detail::replace_pair(lhs, Sym::Cbar, Sym::W, J(a) * Y + J(cat.p("p4")));
                      return z.vanishes(lhs + J(cat.p("p5")), "cbar-cbeta residual");
                    }});

  checks.push_back({"abeta-alpha", "ik a_beta_alpha = a_alpha_alpha + (p1 - dp2/da) a_alpha - dp2/dabar abar_alpha - p1 p2 - dp2/dalpha",
                    [=](ZeroTester& z) {
                      const J display = X2 + J(p1 - p2_a) * X - J(q) * Y - J(p1 * p2 + p2_al);
                      const J derived = d_alpha_total(X - J(p2), first, r, true);
                      bool ok = z.vanishes(derived - display, "k-corrected alpha-derivative of a_alpha - p2");
                      // ik beta-derivative of a_alpha must agree with the same quantity.
                      const J via_beta = d_beta_ik(X, first, r);
                      const J via_alpha = d_alpha_total(d_beta_ik(J(a), first, r), first, r, true);
                      return z.vanishes(via_beta - via_alpha, "beta/alpha commutation on a") && ok;
                    }});

  const J xy_relation = X * Y - J(p7) * X - J(p7b) * Y - J(p8);
  const Formula p7_a = p7.diff(DiffVar::a);

  checks.push_back({"xy-alpha", "alpha-derivative of |a_alpha|^2 = p7 a_alpha + conj(p7 a_alpha) + p8", [=](ZeroTester& z) {
                      const J A = d_alpha_total(xy_relation, closed, r);
                      const J rhs = J(p7_a) * X * X + J(p7_a.conj()) * Y * Y + J(cat.p("p9a")) * X +
                                    J(cat.p("p9a").conj()) * Y + J(cat.p("p10a"));
                      const J display = X2 * (Y - J(p7)) + Y2 * (X - J(p7b)) - rhs;
                      return z.vanishes(A - display, "xy-alpha residual");
                    }});

  checks.push_back({"xy-beta", "2 a_alpha_alpha (conj(a_alpha) - p7) = dp2/dabar conj(a_alpha)^2 + (p9a + p9b) a_alpha + ...",
                    [=](ZeroTester& z) {
                      const Formula &p9a = cat.p("p9a"), &p9b = cat.p("p9b");
                      const J A = d_alpha_total(xy_relation, closed, r);
                      const J B = d_beta_ik(xy_relation, closed, r);
                      const J rhs13 = -J(q.conj() - p7_a) * X * X + J(q - p7_a.conj()) * Y * Y + J(p9b) * X -
                                      J(p9b.conj()) * Y + J(cat.p("p10b"));
                      const J lhs13 = X2 * (Y - J(p7)) - Y2 * (X - J(p7b));
                      bool ok13 = z.vanishes(B - (lhs13 - rhs13), "beta-side display");
                      const J rhs15 = J(q) * Y * Y + J(p9a + p9b) * X + J(p9a.conj() - p9b.conj()) * Y +
                                      J(cat.p("p10a") + cat.p("p10b"));
                      bool ok15 = z.vanishes((A + B) - (J(Formula(2)) * X2 * (Y - J(p7)) - rhs15), "sum display");
                      return ok13 && ok15;
                    }});

  checks.push_back({"second-order-coeffs", "a_alpha_alpha = p11 a_alpha^2 + p12 a_alpha + 1/2 dp2/dabar conj(a_alpha) + p13",
                    [=](ZeroTester& z) {
                      const Formula &p9a = cat.p("p9a"), &p9b = cat.p("p9b");
                      const J rhs15 = J(q) * Y * Y + J(p9a + p9b) * X + J(p9a.conj() - p9b.conj()) * Y +
                                      J(cat.p("p10a") + cat.p("p10b"));
                      // (conj(a_alpha) - p7)(a_alpha - conj(p7)) = |p7|^2 + p8 under the XY rule
                      const J n_check = reduce_jet((Y - J(p7)) * (X - J(p7b)), closed, r);
                      const Formula N = p7 * p7b + p8;
                      bool ok_n = z.vanishes(n_check - J(N), "(Y - p7)(X - conj p7) - N");
                      const J expanded = reduce_jet((X - J(p7b)) * rhs15, closed, r);
                      const J target = J(Formula(2) * N) * detail::second_order_rule(r);
                      return z.vanishes(expanded - target, "2N a_alpha_alpha expansion") && ok_n;
                    }});

  checks.push_back({"abeta-alpha-closed", "ik a_beta_alpha = p11 a_alpha^2 + p14 a_alpha - 1/2 dp2/dabar conj(a_alpha) + p15",
                    [=](ZeroTester& z) {
                      const J z_first = reduce_jet(ik_beta_of_X(first, r), second, r);
                      const J display = J(r.p11) * X * X + J(cat.p("p14")) * X - J(half * q) * Y + J(cat.p("p15"));
                      return z.vanishes(z_first - display, "abeta-alpha-closed residual");
                    }});

  checks.push_back({"mixed-partial-residual", "p16 a_alpha^2 + p17 a_alpha + p18 conj(a_alpha) + p19 = 0", [=](ZeroTester& z) {
                      const J r17 = detail::second_order_rule(r);
                      const J r21 = ik_beta_of_X(second, r);
                      const J lhs = d_beta_ik(r17, second, r);
                      const J rhs = d_alpha_total(r21, second, r, true);
                      const Formula &p11 = r.p11;
                      const Formula x3 = Formula(2) * p11 * p11 + p11.diff(DiffVar::a);
                      const Formula y2 = -(half * (p11.conj() * q + q.diff(DiffVar::abar)));
                      bool ok = true;
                      ok &= z.vanishes(detail::coeff_of(lhs, Sym::X, 3) - x3, "beta side X^3 coefficient");
                      ok &= z.vanishes(detail::coeff_of(rhs, Sym::X, 3) - x3, "alpha side X^3 coefficient");
                      ok &= z.vanishes(detail::coeff_of(lhs, Sym::Y, 2) - y2, "beta side Y^2 coefficient");
                      ok &= z.vanishes(detail::coeff_of(rhs, Sym::Y, 2) - y2, "alpha side Y^2 coefficient");
                      const J target = J(cat.p("p16")) * X * X + J(cat.p("p17")) * X + J(cat.p("p18")) * Y +
                                       J(cat.p("p19"));
                      const J residual = lhs - rhs;
                      if (detail::check_up_to_sign(z, residual, target, "mixed-partial residual")) return ok;
                      // Localize the mismatch per monomial, and per side against the a/b halves.
                      const std::pair<JetMono, const char*> slots[] = {{JetMono::sym(Sym::X, 2), "16"},
                                                                       {JetMono::sym(Sym::X), "17"},
                                                                       {JetMono::sym(Sym::Y), "18"},
                                                                       {JetMono(), "19"}};
                      for (const auto& [m, n] : slots) {
                        const std::string id = std::string("p") + n;
                        z.notes.push_back(m.str() + " of residual vs " + id + ": " +
                                          (detail::probe(z, residual.coeff(m) - cat.p(id)) ? "match" : "mismatch"));
                        z.notes.push_back(m.str() + " of beta side vs " + id + "a: " +
                                          (detail::probe(z, lhs.coeff(m) - cat.p(id + "a")) ? "match" : "mismatch"));
                        z.notes.push_back(m.str() + " of alpha side vs " + id + "b: " +
                                          (detail::probe(z, rhs.coeff(m) - cat.p(id + "b")) ? "match" : "mismatch"));
                      }
                      return false;
                    }});

  checks.push_back({"cubic-elim", "p16 a_alpha^3 + p20 a_alpha^2 + p21 a_alpha + p22 = 0", [=](ZeroTester& z) {
                      const J t = J(cat.p("p16")) * X * X + J(cat.p("p17")) * X + J(cat.p("p18")) * Y +
                                  J(cat.p("p19"));
                      const J cubic = reduce_jet(t * (X - J(p7b)), closed, r);
                      const J target = J(cat.p("p16")) * X * X * X + J(cat.p("p20")) * X * X +
                                       J(cat.p("p21")) * X + J(cat.p("p22"));
                      return z.vanishes(cubic - target, "eliminated cubic");
                    }});

  checks.push_back({"branch-F", "F = 0 on the branch a_alpha = conj(p7)", [=](ZeroTester& z) {
                      const Formula p7b_a = p7b.diff(DiffVar::a), p7b_ab = p7b.diff(DiffVar::abar);
                      auto on_branch = [&](const J& e) {
                        return e.substitute(Sym::X, J(p7b)).substitute(Sym::Y, J(p7));
                      };
                      const J beta_side = on_branch(d_beta_ik(J(p7b), first, r));
                      const Formula display18 = p7b_a * (p7b - p2) - p7b_ab * (p7 - p2.conj());
                      bool ok = z.vanishes(beta_side - J(display18), "beta-derivative of a_alpha on the branch");
                      const J x2_on_branch = d_alpha_total(J(p7b), first, r);
                      const J alpha_side = on_branch(ik_beta_of_X(first, r).substitute(Sym::X2, x2_on_branch));
                      const Formula display19 = p7b.diff(DiffVar::alpha) + p7b_a * p7b + p7b_ab * p7 +
                                                (p1 - p2_a) * p7b - q * p7 - p1 * p2 - p2_al;
                      ok &= z.vanishes(alpha_side - J(display19), "alpha-derivative of a_beta on the branch");
                      ok &= detail::check_up_to_sign(z, J(display18 - display19), J(cat.F()), "difference vs F");
                      return ok;
                    }});

  checks.push_back({"p18-diag", "Y coefficient of the mixed-partial difference, per side", [=](ZeroTester& z) {
                      // Diagnostic: the beta side Y coefficient against p18a with -conj(p7) q replaced by
                      // -conj(p7) dp12/dabar, and the Y coefficient of the difference against zero.
                      const J r17 = detail::second_order_rule(r);
                      const J lhs = d_beta_ik(r17, second, r);
                      const J rhs = d_alpha_total(ik_beta_of_X(second, r), second, r, true);
                      const JetMono y = JetMono::sym(Sym::Y);
                      const Formula amended =
                          cat.p("p18a") + p7b * q - p7b * cat.p("p12").diff(DiffVar::abar);
                      bool ok = z.vanishes(lhs.coeff(y) - amended, "beta side Y vs amended p18a");
                      ok &= z.vanishes(lhs.coeff(y) - rhs.coeff(y), "Y coefficient of the difference");
                      z.notes.push_back(std::string("printed p18 vanishes: ") +
                                        (detail::probe(z, cat.p("p18")) ? "yes" : "no"));
                      return ok;
                    }});

  return checks;
}

/// Exact identities among catalog entries that need no jet symbols.
inline std::vector<ReplayCheck> static_checks() {
  const auto& cat = Catalog::instance();
  const Formula a = Formula::var(Var::a), ab = Formula::var(Var::abar);
  const Formula s = Formula::var(Var::s), c = Formula::var(Var::c), rho = Formula::var(Var::rho),
                b = Formula::var(Var::b);
  const Formula half(GaussianRational(Rational(1, 2)));
  std::vector<ReplayCheck> checks;

  checks.push_back({"ids-p1-p2-p3", "p1 - conj(p1) = 0, dp3/dabar = 0, conj(dp2/da) = 2 p3", [&cat](ZeroTester& z) {
                      const Formula &p1 = cat.p("p1"), &p2 = cat.p("p2"), &p3 = cat.p("p3");
                      bool ok = z.vanishes(p1 - cat.pbar("p1"), "p1 - pbar p1");
                      ok &= z.vanishes(p3.diff(DiffVar::abar), "dp3/dabar");
                      ok &= z.vanishes(p2.diff(DiffVar::a).conj() - Formula(2) * p3, "conj(dp2/da) - 2 p3");
                      return ok;
                    }});

  checks.push_back({"ids-p2-p7-p8", "conj(dp2/dabar) = 2 dp7/da, p8 = conj(p8)", [&cat](ZeroTester& z) {
                      bool ok = z.vanishes(cat.p("p2").diff(DiffVar::abar).conj() - Formula(2) * cat.p("p7").diff(DiffVar::a),
                                           "conj(dp2/dabar) - 2 dp7/da");
                      ok &= z.vanishes(cat.p("p8") - cat.pbar("p8"), "p8 - pbar p8");
                      return ok;
                    }});

  checks.push_back({"coef-simp", "coefficient of a_alpha simplifies to -3 rho sin cos / (4(a+b))",
                    [=, &cat](ZeroTester& z) {
                      const Formula &p2 = cat.p("p2"), &p3 = cat.p("p3"), &p4 = cat.p("p4"), &kappa = cat.p("kappa");
                      const Formula lhs = half * a * p2.diff(DiffVar::abar).conj() - kappa * p3.diff(DiffVar::a) +
                                          p4.diff(DiffVar::a);
                      const Formula mid = -(half * cat.pbar("p2")) + ab * p3;
                      const Formula rhs = -(Formula(3) * rho * s * c) / (Formula(4) * (a + b));
                      bool ok = z.vanishes(lhs - mid, "first step");
                      ok &= z.vanishes(mid - rhs, "second step");
                      return ok;
                    }});

  for (const auto& id : cat.ids()) {
    if (id == "kappa" || id == "F") continue;
    checks.push_back({"swap-" + id, "conj(" + id + ") equals the a/abar swap of " + id, [id, &cat](ZeroTester& z) {
                        return z.vanishes(cat.p(id).conj() - cat.pbar(id), "conj vs swap");
                      }});
  }
  return checks;
}

}  // namespace pmc
