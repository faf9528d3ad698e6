#pragma once

#include <string>

#include "pmc/catalog/catalog.hpp"
#include "pmc/jet/jet_poly.hpp"

namespace pmc {

/// Stages of the derivation. Each level keeps the rules of the ones before.
///   Base        C*Cbar -> kappa
///   FirstOrder  jet symbols X, Y allowed, no XY rule
///   Closed      X*Y -> p7 X + conj(p7) Y + p8
///   SecondOrder X2 -> p11 X^2 + p12 X + q/2 Y + p13, Y2 -> conjugate
enum class RewriteLevel { Base, FirstOrder, Closed, SecondOrder };

/// Order in which mixed X^i Y^j monomials are rewritten.
enum class XYOrder {
  Greedy,   // peel one X*Y off the largest mixed monomial at a time
  Grouped,  // replace (X*Y)^min(i,j) at once by a power of the rule
};

/// Catalog coefficients the rewrite rules and operators need.
template <class Coeff>
struct JetRules {
  Coeff kappa;
  Coeff p1, p2, p3;
  Coeff p7, p8;
  Coeff p11, p12, p13, p14, p15;
  Coeff q;  // d p2 / d abar
};

inline JetRules<Formula> catalog_rules() {
  const auto& cat = Catalog::instance();
  JetRules<Formula> r;
  r.kappa = cat.p("kappa");
  r.p1 = cat.p("p1");
  r.p2 = cat.p("p2");
  r.p3 = cat.p("p3");
  r.p7 = cat.p("p7");
  r.p8 = cat.p("p8");
  r.p11 = cat.p("p11");
  r.p12 = cat.p("p12");
  r.p13 = cat.p("p13");
  r.p14 = cat.p("p14");
  r.p15 = cat.p("p15");
  r.q = cat.p("p2").diff(DiffVar::abar);
  return r;
}

/// The same rules with every coefficient materialized.
inline JetRules<TrigRational> materialized_rules() {
  auto f = catalog_rules();
  return {f.kappa.materialize(), f.p1.materialize(),  f.p2.materialize(),  f.p3.materialize(),
          f.p7.materialize(),    f.p8.materialize(),  f.p11.materialize(), f.p12.materialize(),
          f.p13.materialize(),   f.p14.materialize(), f.p15.materialize(), f.q.materialize()};
}

namespace detail {

template <class Coeff>
Coeff coeff_pow(const Coeff& c, unsigned e) {
  Coeff r(1);
  for (unsigned k = 0; k < e; ++k) r = r * c;
  return r;
}

template <class Coeff>
JetPoly<Coeff> xy_rule(const JetRules<Coeff>& r) {
  using J = JetPoly<Coeff>;
  return J(r.p7) * J::sym(Sym::X) + J(coeff_conj(r.p7)) * J::sym(Sym::Y) + J(r.p8);
}

template <class Coeff>
JetPoly<Coeff> second_order_rule(const JetRules<Coeff>& r) {
  using J = JetPoly<Coeff>;
  const J X = J::sym(Sym::X);
  return J(r.p11) * X * X + J(r.p12) * X + J(Coeff(GaussianRational(Rational(1, 2))) * r.q) * J::sym(Sym::Y) +
         J(r.p13);
}

template <class Coeff>
JetPoly<Coeff> reduce_cc(const JetPoly<Coeff>& e, const JetRules<Coeff>& r) {
  bool any = false;
  for (const auto& [m, c] : e.terms())
    if (m[Sym::C] && m[Sym::Cbar]) any = true;
  if (!any) return e;
  JetPoly<Coeff> out;
  for (const auto& [m, c] : e.terms()) {
    unsigned k = std::min(m[Sym::C], m[Sym::Cbar]);
    if (!k) {
      out.add_term(m, c);
      continue;
    }
    out.add_term(m.with(Sym::C, m[Sym::C] - k).with(Sym::Cbar, m[Sym::Cbar] - k), c * coeff_pow(r.kappa, k));
  }
  return out;
}

template <class Coeff>
JetPoly<Coeff> reduce_xy(JetPoly<Coeff> e, const JetRules<Coeff>& r, XYOrder order) {
  const JetPoly<Coeff> rule = xy_rule(r);
  auto mixed = [](JetMono m) { return m[Sym::X] > 0 && m[Sym::Y] > 0; };
  for (;;) {
    std::optional<JetMono> pick;
    for (const auto& [m, c] : e.terms())
      if (mixed(m)) pick = m;  // map order: the last mixed one is the largest
    if (!pick) return e;
    JetMono m = *pick;
    Coeff c = e.coeff(m);
    JetPoly<Coeff> rest;
    for (const auto& [mm, cc] : e.terms())
      if (mm != m) rest.add_term(mm, cc);
    unsigned k = order == XYOrder::Greedy ? 1 : std::min(m[Sym::X], m[Sym::Y]);
    JetMono base = m.with(Sym::X, m[Sym::X] - k).with(Sym::Y, m[Sym::Y] - k);
    e = rest + rule.pow(k).times(base).scaled(c);
  }
}

}  // namespace detail

/// Normal form under the rules active at `lvl`.
template <class Coeff>
JetPoly<Coeff> reduce_jet(const JetPoly<Coeff>& e, RewriteLevel lvl, const JetRules<Coeff>& r,
                          XYOrder order = XYOrder::Greedy) {
  JetPoly<Coeff> out = e;
  if (lvl == RewriteLevel::SecondOrder) {
    auto x2 = detail::second_order_rule(r);
    if (out.has(Sym::X2)) out = out.substitute(Sym::X2, x2);
    if (out.has(Sym::Y2)) out = out.substitute(Sym::Y2, x2.conj());
  }
  out = detail::reduce_cc(out, r);
  if (lvl >= RewriteLevel::Closed) out = detail::reduce_xy(out, r, order);
  return out;
}

/// Total alpha-derivative: coefficients by the chain rule through a and
/// abar, symbols X -> X2, Y -> Y2, C -> W, Cbar -> Wbar. With
/// `k_corrected`, adds p1 * e, which turns the derivative of an ik-beta
/// image into the ik-beta image of a derivative (k_alpha = -p1 k).
template <class Coeff>
JetPoly<Coeff> d_alpha_total(const JetPoly<Coeff>& e, RewriteLevel lvl, const JetRules<Coeff>& r,
                             bool k_corrected = false) {
  using J = JetPoly<Coeff>;
  const J in = lvl == RewriteLevel::SecondOrder ? reduce_jet(e, lvl, r) : e;
  J out;
  for (const auto& [m, c] : in.terms()) {
    out.add_term(m, coeff_diff(c, DiffVar::alpha));
    out.add_term(m * JetMono::sym(Sym::X), coeff_diff(c, DiffVar::a));
    out.add_term(m * JetMono::sym(Sym::Y), coeff_diff(c, DiffVar::abar));
    for (Sym s : kAllSyms) {
      unsigned k = m[s];
      if (!k) continue;
      Sym image;
      switch (s) {
        case Sym::X: image = Sym::X2; break;
        case Sym::Y: image = Sym::Y2; break;
        case Sym::C: image = Sym::W; break;
        case Sym::Cbar: image = Sym::Wbar; break;
        default: throw UnsupportedSymbol(std::string("no alpha-derivative for symbol ") + sym_name(s));
      }
      out.add_term(m.with(s, k - 1) * JetMono::sym(image), c * Coeff(static_cast<long>(k)));
    }
  }
  if (k_corrected) out += in.scaled(r.p1);
  return reduce_jet(out, lvl, r);
}

/// ik times the beta-derivative of the symbol X (= a_alpha): the relation
/// obtained by differentiating a_alpha - ik a_beta = p2 in alpha. At
/// SecondOrder, with X2 eliminated, it is p11 X^2 + p14 X - q/2 Y + p15.
template <class Coeff>
JetPoly<Coeff> ik_beta_of_X(RewriteLevel lvl, const JetRules<Coeff>& r) {
  using J = JetPoly<Coeff>;
  const J X = J::sym(Sym::X), Y = J::sym(Sym::Y);
  if (lvl == RewriteLevel::SecondOrder)
    return J(r.p11) * X * X + J(r.p14) * X - J(Coeff(GaussianRational(Rational(1, 2))) * r.q) * Y + J(r.p15);
  return J::sym(Sym::X2) + J(r.p1 - coeff_diff(r.p2, DiffVar::a)) * X - J(r.q) * Y -
         J(r.p1 * r.p2 + coeff_diff(r.p2, DiffVar::alpha));
}

/// ik * d/dbeta: a -> X - p2, abar -> -(Y - conj p2), C -> 2 C p3 - W,
/// Cbar -> -(2 Cbar conj p3 - Wbar), X -> ik_beta_of_X, Y -> -conj of it.
template <class Coeff>
JetPoly<Coeff> d_beta_ik(const JetPoly<Coeff>& e, RewriteLevel lvl, const JetRules<Coeff>& r) {
  using J = JetPoly<Coeff>;
  const J in = lvl == RewriteLevel::SecondOrder ? reduce_jet(e, lvl, r) : e;
  const J X = J::sym(Sym::X), Y = J::sym(Sym::Y);
  const J a_image = X - J(r.p2);
  const J abar_image = -(Y - J(coeff_conj(r.p2)));
  J x_image, y_image;
  if (in.has(Sym::X) || in.has(Sym::Y)) {
    if (lvl == RewriteLevel::Base) throw UnsupportedSymbol("a_alpha needs at least the first-order level");
    x_image = ik_beta_of_X(lvl, r);
    y_image = -x_image.conj();
  }
  J out;
  for (const auto& [m, c] : in.terms()) {
    const J mono = J::term(m, Coeff(1));
    out += (a_image * mono).scaled(coeff_diff(c, DiffVar::a));
    out += (abar_image * mono).scaled(coeff_diff(c, DiffVar::abar));
    for (Sym s : kAllSyms) {
      unsigned k = m[s];
      if (!k) continue;
      J image;
      switch (s) {
        case Sym::X: image = x_image; break;
        case Sym::Y: image = y_image; break;
        case Sym::C: image = J(Coeff(2) * r.p3) * J::sym(Sym::C) - J::sym(Sym::W); break;
        case Sym::Cbar:
          image = J::sym(Sym::Wbar) - J(Coeff(2) * coeff_conj(r.p3)) * J::sym(Sym::Cbar);
          break;
        default: throw UnsupportedSymbol(std::string("no beta-derivative for symbol ") + sym_name(s));
      }
      out += (image * J::term(m.with(s, k - 1), Coeff(1))).scaled(c * Coeff(static_cast<long>(k)));
    }
  }
  return reduce_jet(out, lvl, r);
}

}  // namespace pmc
