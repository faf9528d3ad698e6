#pragma once

#include <string>
#include <string_view>

#include "pmc/expr/ast.hpp"
#include "pmc/jet/jet_poly.hpp"
#include "pmc/kernel/trig_rational.hpp"

namespace pmc::expr {

namespace detail {

inline bool is_alpha(const Node& n) {
  const Node* p = &n;
  while (p->kind == Kind::Paren) p = p->kids[0].get();
  return p->kind == Kind::Var && p->var == VarName::alpha;
}

inline std::string at(const Node& n) { return " at offset " + std::to_string(n.offset); }

}  // namespace detail

/// Lowers to a canonical TrigRational: sin alpha -> s, cos alpha -> c,
/// cot alpha -> c/s, conj -> kernel conjugation.
inline TrigRational lower(const Node& n) {
  switch (n.kind) {
    case Kind::Number: return TrigRational(GaussianRational(n.number));
    case Kind::I: return TrigRational(GaussianRational::i());
    case Kind::Paren: return lower(*n.kids[0]);
    case Kind::Neg: return -lower(*n.kids[0]);
    case Kind::Var:
      switch (n.var) {
        case VarName::alpha: throw DomainError("alpha may only appear as the argument of sin, cos or cot" + detail::at(n));
        case VarName::a: return TrigRational::var(Var::a);
        case VarName::abar: return TrigRational::var(Var::abar);
        case VarName::rho: return TrigRational::var(Var::rho);
        case VarName::b: return TrigRational::var(Var::b);
      }
      break;
    case Kind::Call: {
      if (n.func == Func::conj) return lower(*n.kids[0]).conjugate();
      if (!detail::is_alpha(*n.kids[0]))
        throw DomainError(std::string(func_text(n.func)) + " takes alpha as its argument" + detail::at(n));
      if (n.func == Func::sin) return TrigRational::var(Var::s);
      if (n.func == Func::cos) return TrigRational::var(Var::c);
      return TrigRational::fraction(Polynomial::var(Var::c), Polynomial::var(Var::s));
    }
    case Kind::Binary: {
      TrigRational l = lower(*n.kids[0]);
      try {
        switch (n.op) {
          case '+': return l + lower(*n.kids[1]);
          case '-': return l - lower(*n.kids[1]);
          case '*': return l * lower(*n.kids[1]);
          case '/': return l / lower(*n.kids[1]);
          case '^': return l.pow(n.exponent);
        }
      } catch (const ZeroDenominator&) {
        throw DomainError("division by zero" + detail::at(n));
      }
      break;
    }
  }
  throw DomainError("malformed expression" + detail::at(n));
}

/// parse followed by lower.
inline TrigRational parse_value(std::string_view text) { return lower(*parse(text)); }

namespace detail {

inline std::string var_surface(Var v) {
  switch (v) {
    case Var::s: return "sin(alpha)";
    case Var::c: return "cos(alpha)";
    default: return std::string(var_name(v));
  }
}

inline std::string mono_text(const Monomial& m) {
  std::string out;
  for (Var v : kAllVars) {
    unsigned e = m[v];
    if (!e) continue;
    if (!out.empty()) out += '*';
    out += var_surface(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::string coef_text(const GaussianRational& c) {
  std::string t = c.str();
  return c.is_real() ? t : "(" + t + ")";
}

inline bool is_single_var(const Polynomial& p) {
  if (p.size() != 1 || !p.terms()[0].coef.is_one()) return false;
  return p.terms()[0].mono.degree() == 1;
}

}  // namespace detail

/// Polynomial in surface syntax, terms in the kernel's monomial order.
inline std::string render(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    bool neg = t.coef.is_real() && sgn(t.coef.real()) < 0;
    GaussianRational c = neg ? -t.coef : t.coef;
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (t.mono.is_one()) out += detail::coef_text(c);
    else if (c.is_one()) out += detail::mono_text(t.mono);
    else out += detail::coef_text(c) + "*" + detail::mono_text(t.mono);
  }
  return out;
}

/// Deterministic surface form; parse_value(render(e)) equals e.
inline std::string render(const TrigRational& e) {
  const auto& fs = e.factors();
  std::string num = render(e.numerator());
  if (fs.empty() || e.is_zero()) return num;
  if (e.numerator().size() > 1) num = "(" + num + ")";
  std::string den;
  bool bare = fs.size() == 1;  // a lone parenthesized or single-variable factor
  for (const auto& f : fs) {
    std::string a = render(f.atom);
    if (f.atom.size() > 1 || (!detail::is_single_var(f.atom) && f.power > 1)) a = "(" + a + ")";
    else if (!detail::is_single_var(f.atom)) bare = false;
    if (f.power > 1) a += "^" + std::to_string(f.power);
    den += (den.empty() ? "" : "*") + a;
  }
  if (!bare) den = "(" + den + ")";
  return num + "/" + den;
}

/// Jet polynomials print with the symbols X, Y, X2, Y2, C, Cbar, P, Pbar.
inline std::string render(const JetPoly<TrigRational>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    std::string ct = render(c);
    if (m.is_one()) {
      out += ct;
      continue;
    }
    if (ct != "1") out += (c.numerator().size() == 1 && c.factors().empty() ? ct : "(" + ct + ")") + "*";
    out += m.str();
  }
  return out;
}

}  // namespace pmc::expr
