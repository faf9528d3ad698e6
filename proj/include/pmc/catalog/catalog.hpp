#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmc/jet/jet_poly.hpp"
#include "pmc/kernel/formula.hpp"

namespace pmc {

struct PEntry {
  std::string id;
  Formula expr;
  std::string anchor;
};

/// p16, p20, p21, p22: the cubic satisfied by a_alpha.
struct CubicCoeffs {
  Formula c3, c2, c1, c0;
};

/// G as a quotient of polynomials in P, Pbar over the base ring, together
/// with the p24..p26 pieces it is assembled from.
struct GTemplate {
  JetPoly<Formula> denominator;  // 3 p16 P^2 + 2 p20 P + p21
  JetPoly<Formula> p24_num, p25_num, p26_num;
  JetPoly<Formula> numerator;  // G * denominator
};

namespace detail {

/// Builds the catalog. With `mirror` set, every a and abar (as leaves and as
/// differentiation variables) are exchanged, which yields pbar_i directly
/// from the same formulas.
class CatalogBuilder {
 public:
  explicit CatalogBuilder(bool mirror) : mirror_(mirror) {}

  std::vector<PEntry> build() {
    const Formula s = Formula::var(Var::s), c = Formula::var(Var::c);
    const Formula a = Formula::var(mirror_ ? Var::abar : Var::a);
    const Formula ab = Formula::var(mirror_ ? Var::a : Var::abar);
    const Formula rho = Formula::var(Var::rho), b = Formula::var(Var::b);
    const Formula half(GaussianRational(Rational(1, 2)));
    const Formula three_halves(GaussianRational(Rational(3, 2)));
    const Formula cot = Formula(TrigRational::var(Var::c) / TrigRational::var(Var::s));

    auto Da = [&](const Formula& f) { return f.diff(mirror_ ? DiffVar::abar : DiffVar::a); };
    auto Dab = [&](const Formula& f) { return f.diff(mirror_ ? DiffVar::a : DiffVar::abar); };
    auto Dal = [&](const Formula& f) { return f.diff(DiffVar::alpha); };
    auto cj = [](const Formula& f) { return f.conj(); };

    const Formula ricci = half * rho * (Formula(-2) + Formula(3) * s * s);
    const Formula kappa = a * ab + ricci;
    add("kappa", kappa, "Ricci relation: |c|^2 = a*abar + rho/2*(-2 + 3 sin^2 alpha)");

    const Formula p1 = ((a - b) * (ab - b) + three_halves * rho * s * s) * cot / ((a + b) * (ab + b));
    add("p1", p1, "p1 = (|a-b|^2 + 3/2 rho sin^2 alpha) cot alpha / |a+b|^2");
    const Formula p2 = (Formula(2) * a * (ab - b) + three_halves * rho * s * s) * cot / (ab + b);
    add("p2", p2, "p2 = (2a(abar-b) + 3/2 rho sin^2 alpha) cot alpha / (abar+b)");
    const Formula p3 = (a - b) / (a + b) * cot;
    add("p3", p3, "p3 = (a-b)/(a+b) cot alpha");
    const Formula p4 = kappa * (p3 - cj(p3)) + half * (ab * p2 - a * cj(p2)) + three_halves * rho * s * c;
    add("p4", p4, "p4 = kappa (p3 - conj p3) + 1/2 (abar p2 - a conj p2) + 3/2 rho sin cos");
    const Formula p5 = a * cj(p2) - Formula(2) * kappa * p3 + p4;
    add("p5", p5, "p5 = a conj p2 - 2 kappa p3 + p4");
    const Formula p6 = p4 * (cj(p3) - p3) - kappa * Dal(p3) +
                       half * (p1 * p5 + a * cj(Dal(p2)) + Dal(p4) - p2 * Da(p4) + cj(p2) * Dab(p4));
    add("p6", p6, "p6, from the alpha-derivative of the closure relation");
    const Formula p7 =
        (ab * p4 + Formula(3) * rho * s * c / (Formula(4) * (a + b)) * kappa) / ricci;
    add("p7", p7, "p7 = (abar p4 + 3 rho sin cos kappa / (4(a+b))) / (rho/2 (-2 + 3 sin^2 alpha))");
    const Formula p8 = (p4 * cj(p4) - kappa * p6) / ricci;
    add("p8", p8, "p8 = (|p4|^2 - kappa p6) / (rho/2 (-2 + 3 sin^2 alpha))");

    const Formula p7_ab = Dab(p7);
    const Formula p9a = Dal(p7) + (p7_ab + cj(p7_ab)) * p7 + Da(p8);
    add("p9a", p9a, "p9a, coefficient of a_alpha in the alpha-derivative of |a_alpha|^2");
    const Formula p9b = p1 * (-cj(p2) + p7) - cj(Dal(p2)) - p2 * Da(p7) + cj(p2) * p7_ab - p7 * cj(Da(p2)) +
                        cj(p7) * cj(Dab(p2)) - p7 * (p7_ab - cj(p7_ab)) + Da(p8);
    add("p9b", p9b, "p9b, coefficient of a_alpha in the beta-derivative of |a_alpha|^2");
    const Formula p10a = p8 * (p7_ab + cj(p7_ab)) + Dal(p8);
    add("p10a", p10a, "p10a, constant term in the alpha-derivative of |a_alpha|^2");
    const Formula p10b = p1 * (-p2 * p7 + cj(p2 * p7)) - p2 * Da(p8) + cj(p2) * Dab(p8) - p7 * Dal(p2) +
                         cj(p7 * Dal(p2)) + p8 * (Da(p2) - cj(Da(p2)) - p7_ab + cj(p7_ab));
    add("p10b", p10b, "p10b, constant term in the beta-derivative of |a_alpha|^2");

    const Formula q = Dab(p2);
    const Formula q2 = Da(Dab(p2));
    const Formula N = p7 * cj(p7) + p8;
    const Formula twoN_inv = (Formula(2) * N).inverse();
    const Formula p9s = p9a + p9b;
    const Formula p9d_bar = cj(p9a) - cj(p9b);
    const Formula p10s = p10a + p10b;
    const Formula p11 = p9s * twoN_inv;
    add("p11", p11, "p11 = (p9a + p9b) / (2(|p7|^2 + p8))");
    const Formula p12 = (p7 * p7 * q + p7 * p9d_bar - cj(p7) * p9s + p10s) * twoN_inv;
    add("p12", p12, "p12, coefficient of a_alpha in a_alpha_alpha");
    const Formula p13 = (p7 * p8 * q - cj(p7) * p10s + p8 * p9d_bar) * twoN_inv;
    add("p13", p13, "p13, constant term of a_alpha_alpha");
    const Formula p14 = p1 - Da(p2) + p12;
    add("p14", p14, "p14 = p1 - dp2/da + p12");
    const Formula p15 = -(p1 * p2) - Dal(p2) + p13;
    add("p15", p15, "p15 = -p1 p2 - dp2/dalpha + p13");

    const Formula p11_ab = Dab(p11);
    const Formula p16a = p11 * (p12 + Formula(2) * p14) - p2 * Da(p11) + cj(p2) * p11_ab - p7 * p11_ab + Da(p12);
    add("p16a", p16a, "p16a, X^2 coefficient from the beta-derivative side");
    const Formula p16b = p11 * (p1 + Formula(2) * p12 + p14) + Dal(p11) + p7 * p11_ab + Da(p14);
    add("p16b", p16b, "p16b, X^2 coefficient from the alpha-derivative side");
    add("p16", p16a - p16b, "p16 = p16a - p16b");
    const Formula quarter(GaussianRational(Rational(1, 4)));
    const Formula p17a = Formula(2) * p11 * p15 + p12 * p14 + quarter * q * cj(q) + half * p7 * q2 -
                         p7 * p11 * q - N * p11_ab - p2 * Da(p12) + cj(p2) * Dab(p12) - p7 * Dab(p12) + Da(p13);
    add("p17a", p17a, "p17a, X coefficient from the beta-derivative side");
    const Formula p17b = p1 * p14 + Formula(2) * p11 * p13 + p12 * p14 - quarter * q * cj(q) - half * p7 * q2 +
                         p7 * p11 * q + N * p11_ab + p7 * Dab(p14) + Dal(p14) + Da(p15);
    add("p17b", p17b, "p17b, X coefficient from the alpha-derivative side");
    add("p17", p17a - p17b, "p17 = p17a - p17b");
    const Formula p7b = cj(p7);
    const Formula p18a = -half * (Formula(2) * p7b + Formula(2) * p7b * p11 + p12 + cj(p14)) * q +
                         half * (-p2 + p7b) * q2 + half * cj(p2) * Dab(q) - p7b * p7b * p11_ab - Dab(p13);
    add("p18a", p18a, "p18a, Y coefficient from the beta-derivative side");
    const Formula p18b = -half * (p1 - Formula(2) * p7b * p11 + cj(p12) - p14) * q - half * Dal(Da(p2)) -
                         half * p7b * q2 + p7b * p7b * p11_ab + p7b * Dab(p14) + Dab(p15);
    add("p18b", p18b, "p18b, Y coefficient from the alpha-derivative side");
    add("p18", p18a - p18b, "p18 = p18a - p18b");
    const Formula p19a = p12 * p15 - half * (Formula(2) * p8 * p11 + cj(p15)) * q + half * p8 * q2 -
                         cj(p7 * p8) * p11_ab - p8 * Dab(p12) - p2 * Da(p13) + cj(p2) * Dab(p13);
    add("p19a", p19a, "p19a, constant term from the beta-derivative side");
    const Formula p19b = p1 * p15 + p13 * p14 + half * (Formula(2) * p8 * p11 - cj(p13)) * q - half * p8 * q2 +
                         cj(p7 * p8) * p11_ab + p8 * Dab(p14) + Dal(p15);
    add("p19b", p19b, "p19b, constant term from the alpha-derivative side");
    add("p19", p19a - p19b, "p19 = p19a - p19b");
    const Formula& p16 = get("p16");
    const Formula& p17 = get("p17");
    const Formula& p18 = get("p18");
    const Formula& p19 = get("p19");
    add("p20", -(p7b * p16) + p17, "p20 = -conj(p7) p16 + p17");
    add("p21", -(p7b * p17) + p7 * p18 + p19, "p21 = -conj(p7) p17 + p7 p18 + p19");
    add("p22", p8 * p18 - p7b * p19, "p22 = p8 p18 - conj(p7) p19");

    const Formula F = p1 * p2 - p1 * p7b + Formula(2) * cj(p3 * p7) + Dal(p2) + half * cj(p2) * q - Dal(p7b) -
                      p2 * Da(p7b);
    add("F", F, "F: difference of the two expressions for ik d(a_alpha)/d(beta) on the real branch a_alpha = conj(p7)");
    return std::move(entries_);
  }

 private:
  void add(const std::string& id, const Formula& f, const std::string& anchor) { entries_.push_back({id, f, anchor}); }
  const Formula& get(const std::string& id) const {
    for (const auto& e : entries_)
      if (e.id == id) return e.expr;
    throw UnknownId(id);
  }

  bool mirror_;
  std::vector<PEntry> entries_;
};

}  // namespace detail

/// G with P, Pbar standing for a root of the cubic c3 X^3 + c2 X^2 + c1 X + c0
/// and its conjugate; p24..p26 enter through their shared denominator.
inline GTemplate make_g_template(const CubicCoeffs& cc, const Formula& p1, const Formula& p2) {
  using J = JetPoly<Formula>;
  const J P = J::sym(Sym::P), Pb = J::sym(Sym::Pbar);
  GTemplate g;
  g.denominator = J(Formula(3) * cc.c3) * P * P + J(Formula(2) * cc.c2) * P + J(cc.c1);
  auto numerator = [&](DiffVar v) {
    return J(cc.c3.diff(v)) * P.pow(3) + J(cc.c2.diff(v)) * P * P + J(cc.c1.diff(v)) * P + J(cc.c0.diff(v));
  };
  g.p24_num = numerator(DiffVar::alpha);
  g.p25_num = numerator(DiffVar::a);
  g.p26_num = numerator(DiffVar::abar);
  const J head = J(p1 * p2 + p2.diff(DiffVar::alpha)) - J(p1 - p2.diff(DiffVar::a)) * P +
                 J(p2.diff(DiffVar::abar)) * Pb;
  g.numerator = head * g.denominator + g.p24_num + J(p2) * g.p25_num - (J(p2.conj()) - J(Formula(2)) * Pb) * g.p26_num;
  return g;
}

/// The named functions p1..p22 (with their a/b halves), kappa and F, plus the
/// P-dependent pieces p24..p26 and G. Built once; read-only afterwards.
class Catalog {
 public:
  static const Catalog& instance() {
    static const Catalog catalog;
    return catalog;
  }

  const PEntry& entry(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownId(id);
    return entries_[it->second];
  }
  const Formula& p(const std::string& id) const { return entry(id).expr; }
  const std::string& anchor(const std::string& id) const { return entry(id).anchor; }

  /// Swap-rule image built independently by exchanging a and abar.
  const Formula& pbar(const std::string& id) const {
    for (const auto& e : mirrored_)
      if (e.id == id) return e.expr;
    throw UnknownId(id);
  }

  /// Ids of the TrigRational-valued entries in catalog order.
  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.id);
    return out;
  }
  bool has(const std::string& id) const { return index_.count(id) > 0; }

  const Formula& F() const { return p("F"); }
  CubicCoeffs cubic_coeffs() const { return {p("p16"), p("p20"), p("p21"), p("p22")}; }

  const GTemplate& G() const { return g_; }

 private:
  Catalog() {
    entries_ = detail::CatalogBuilder(false).build();
    mirrored_ = detail::CatalogBuilder(true).build();
    for (std::size_t k = 0; k < entries_.size(); ++k) index_.emplace(entries_[k].id, k);
    g_ = make_g_template(cubic_coeffs(), p("p1"), p("p2"));
  }

  std::vector<PEntry> entries_;
  std::vector<PEntry> mirrored_;
  std::map<std::string, std::size_t> index_;
  GTemplate g_;
};

inline const PEntry& p(const std::string& id) { return Catalog::instance().entry(id); }
inline const Formula& pbar(const std::string& id) { return Catalog::instance().pbar(id); }
inline const Formula& F_expr() { return Catalog::instance().F(); }
inline CubicCoeffs cubic_coeffs() { return Catalog::instance().cubic_coeffs(); }
inline const GTemplate& G_template() { return Catalog::instance().G(); }

}  // namespace pmc
