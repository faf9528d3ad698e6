#pragma once

// Randomized algebraic-law checks shared by the unit tests and the acceptance binary.

#include <random>
#include <string>

#include "pmc/expr/render.hpp"
#include "pmc/jet/operators.hpp"
#include "pmc/numeric/lab.hpp"

namespace pmc::props {

struct Outcome {
  bool ok = true;
  std::size_t cases = 0;
  std::string witness;

  void fail(const std::string& w) {
    if (ok) witness = w;
    ok = false;
  }
};

/// Random TrigRationals over small coefficients, with denominators drawn from
/// atoms that occur in the catalog.
class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed) : gen_(seed) {}

  GaussianRational coef() {
    Rational re(static_cast<long>(gen_() % 9) - 4, 1 + static_cast<long>(gen_() % 4));
    re.canonicalize();
    if (gen_() % 4) return re;
    return {re, Rational(static_cast<long>(gen_() % 5) - 2)};
  }

  Polynomial poly(unsigned max_terms = 3) {
    Polynomial p;
    unsigned n = 1 + gen_() % max_terms;
    for (unsigned k = 0; k < n; ++k) {
      Monomial m;
      for (unsigned j = gen_() % 3; j > 0; --j) {
        Var v = kAllVars[gen_() % kAllVars.size()];
        m = m.with(v, m[v] + 1);
      }
      p = p + Polynomial::term(m, coef());
    }
    return p;
  }

  Polynomial atom() {
    const Polynomial s = Polynomial::var(Var::s), c = Polynomial::var(Var::c), a = Polynomial::var(Var::a),
                     ab = Polynomial::var(Var::abar), b = Polynomial::var(Var::b), rho = Polynomial::var(Var::rho);
    switch (gen_() % 7) {
      case 0: return s;
      case 1: return c;
      case 2: return b + a;
      case 3: return b + ab;
      case 4: return rho;
      case 5: return b;
      default: return s * s - Polynomial(Rational(2, 3));
    }
  }

  TrigRational expr(int depth = 2) {
    if (depth == 0 || gen_() % 3 == 0) {
      TrigRational e(poly());
      if (gen_() % 2) e = e / TrigRational(atom());
      return e;
    }
    switch (gen_() % 4) {
      case 0: return expr(depth - 1) + expr(depth - 1);
      case 1: return expr(depth - 1) - expr(depth - 1);
      case 2: return expr(depth - 1) * expr(depth - 1);
      default: return expr(depth - 1) / TrigRational(atom()).pow(1 + gen_() % 2);
    }
  }

  std::mt19937_64& gen() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline std::string show(const TrigRational& e) { return expr::render(e); }

inline Outcome normalize_idempotent(std::size_t n, std::uint64_t seed) {
  Outcome o;
  RandomExpr r(seed);
  for (; o.cases < n; ++o.cases) {
    const TrigRational once = normalize(r.expr());
    const TrigRational twice = normalize(once);
    if (!(once == twice) || show(once) != show(twice)) o.fail(show(once));
  }
  return o;
}

inline Outcome conjugation_involution(std::size_t n, std::uint64_t seed) {
  Outcome o;
  RandomExpr r(seed);
  for (; o.cases < n; ++o.cases) {
    const TrigRational e = r.expr();
    if (!equals(e.conjugate().conjugate(), e)) o.fail(show(e));
  }
  return o;
}

/// d(fg) = f'g + fg', d(f^3) = 3 f^2 f', d(1/h) h^2 = -h', and
/// conj(df/da) = d conj(f)/dabar, for each differentiation variable.
inline Outcome derivative_rules(std::size_t n, std::uint64_t seed) {
  Outcome o;
  RandomExpr r(seed);
  const DiffVar vars[] = {DiffVar::alpha, DiffVar::a, DiffVar::abar};
  for (; o.cases < n; ++o.cases) {
    const TrigRational f = r.expr(), g = r.expr();
    const DiffVar v = vars[o.cases % 3];
    const TrigRational df = f.differentiate(v), dg = g.differentiate(v);
    if (!equals((f * g).differentiate(v), df * g + f * dg)) o.fail("Leibniz: " + show(f) + " ; " + show(g));
    if (!equals(f.pow(3).differentiate(v), TrigRational(3) * f * f * df)) o.fail("power: " + show(f));
    // 1/h rationalizes c out of the denominator, which squares the size of h's
    // numerator; h is drawn one level shallower to keep that bounded.
    const TrigRational h = r.expr(1);
    if (!h.is_zero() && !equals(h.inverse().differentiate(v) * h * h, -h.differentiate(v)))
      o.fail("inverse: " + show(h));
    if (!equals(f.differentiate(DiffVar::a).conjugate(), f.conjugate().differentiate(DiffVar::abar)))
      o.fail("conjugate: " + show(f));
  }
  return o;
}

/// Greedy and grouped XY rewriting reach the same normal form on random mixed monomials.
inline Outcome xy_confluence(std::size_t n, std::uint64_t seed) {
  Outcome o;
  RandomExpr r(seed);
  static const JetRules<TrigRational> rules = materialized_rules();
  using J = JetPoly<TrigRational>;
  for (; o.cases < n; ++o.cases) {
    J e;
    for (unsigned t = 1 + r.gen()() % 3; t > 0; --t) {
      JetMono m = JetMono::sym(Sym::X, r.gen()() % 4).with(Sym::Y, r.gen()() % 4);
      e.add_term(m, TrigRational(r.coef()));
    }
    const J greedy = reduce_jet(e, RewriteLevel::Closed, rules, XYOrder::Greedy);
    const J grouped = reduce_jet(e, RewriteLevel::Closed, rules, XYOrder::Grouped);
    if (!(greedy - grouped).is_zero()) o.fail(expr::render(e));
    for (const auto& [m, c] : greedy.terms())
      if (m[Sym::X] && m[Sym::Y]) o.fail("mixed monomial survives: " + expr::render(e));
  }
  return o;
}

/// Floating evaluation at 128 bits against exact evaluation at rational points.
inline Outcome exact_float_coherence(std::size_t n, std::uint64_t seed, Real* worst_out = nullptr) {
  Outcome o;
  RandomExpr r(seed);
  Real worst = 0;
  std::uint64_t point = 1;
  while (o.cases < n) {
    const TrigRational e = r.expr();
    const SamplePoint sp = sample_point(point++);
    GaussianRational exact;
    try {
      exact = e.evaluate(sp.values());
    } catch (const PoleAtPoint&) {
      continue;
    }
    NumericPoint np;
    np.t = sp.t;
    np.alpha_tag = "t";
    np.a_re = sp.a_re;
    np.a_im = sp.a_im;
    np.rho = sp.rho;
    np.b = sp.b;
    ComplexF x = to_complex(exact), y;
    try {
      y = eval_complex(e, np);
    } catch (const PoleNearPoint&) {
      continue;
    }
    ++o.cases;
    const Real err = magnitude(y - x) / std::max(Real(1), magnitude(x));
    if (err > worst) worst = err;
    if (err >= Real("1e-25")) o.fail(show(e) + " at " + sp.str());
  }
  if (worst_out) *worst_out = worst;
  return o;
}

}  // namespace pmc::props
