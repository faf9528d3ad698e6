#pragma once

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "pmc/kernel/polynomial.hpp"

namespace pmc {

/// Variables the engine differentiates with respect to.
enum class DiffVar { alpha, a, abar };

inline const char* diff_var_name(DiffVar v) {
  switch (v) {
    case DiffVar::alpha: return "alpha";
    case DiffVar::a: return "a";
    case DiffVar::abar: return "abar";
  }
  return "?";
}

/// One denominator factor atom^power. Atoms are c-free, real, monic and
/// non-constant.
struct Factor {
  Polynomial atom;
  unsigned power;
};

namespace detail {

inline Polynomial differentiate_poly(const Polynomial& p, DiffVar v) {
  switch (v) {
    case DiffVar::alpha: {
      Polynomial r = Polynomial::var(Var::c) * p.partial(Var::s);
      if (p.depends_on(Var::c)) r -= Polynomial::var(Var::s) * p.partial(Var::c);
      return r.reduce_circle();
    }
    case DiffVar::a: return p.partial(Var::a);
    case DiffVar::abar: return p.partial(Var::abar);
  }
  return {};
}

inline bool poly_depends(const Polynomial& p, DiffVar v) {
  switch (v) {
    case DiffVar::alpha: return p.depends_on(Var::s) || p.depends_on(Var::c);
    case DiffVar::a: return p.depends_on(Var::a);
    case DiffVar::abar: return p.depends_on(Var::abar);
  }
  return false;
}

/// Splits p = lc * monic.
inline std::pair<GaussianRational, Polynomial> make_monic(const Polynomial& p) {
  GaussianRational lc = p.leading().coef;
  if (lc.is_one()) return {lc, p};
  return {lc, p.scaled(GaussianRational(1) / lc)};
}

inline bool atom_less(const Factor& x, const Factor& y) { return structurally_less(x.atom, y.atom); }

/// Denominator atoms tried first when splitting a fresh denominator:
/// s, s -/+ 1, a +/- b, abar +/- b, s^2 - 2/3, the Ricci combination
/// a*abar + rho/2*(3s^2 - 2), and the bare symbols a, abar, rho, b.
inline const std::vector<Polynomial>& factor_basis() {
  static const std::vector<Polynomial> basis = [] {
    const auto s = Polynomial::var(Var::s), a = Polynomial::var(Var::a), ab = Polynomial::var(Var::abar);
    const auto rho = Polynomial::var(Var::rho), b = Polynomial::var(Var::b);
    Polynomial kappa = a * ab + rho.scaled(Rational(1, 2)) * (s * s * 3 - 2);
    std::vector<Polynomial> raw = {s,     s - 1,  s + 1,  a + b, ab + b, a - b, ab - b, s * s - Rational(2, 3),
                                   kappa, a,      ab,     rho,   b};
    std::vector<Polynomial> out;
    for (auto& p : raw) out.push_back(make_monic(p).second);
    return out;
  }();
  return basis;
}

inline Polynomial expand(const std::vector<Factor>& fs) {
  Polynomial r(1);
  for (const auto& f : fs) r *= f.atom.pow(f.power);
  return r;
}

/// Divides `num` by each listed factor as often as it goes, lowering powers.
inline void cancel(Polynomial& num, std::vector<Factor>& fs, const std::vector<bool>* only = nullptr) {
  if (num.is_zero()) {
    fs.clear();
    return;
  }
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (only && !(*only)[k]) continue;
    while (fs[k].power > 0) {
      auto q = num.divide_exact(fs[k].atom);
      if (!q) break;
      num = std::move(*q);
      --fs[k].power;
    }
  }
  fs.erase(std::remove_if(fs.begin(), fs.end(), [](const Factor& f) { return f.power == 0; }), fs.end());
}

inline void insert_factor(std::vector<Factor>& fs, const Polynomial& atom, unsigned power) {
  for (auto& f : fs)
    if (f.atom == atom) {
      f.power += power;
      return;
    }
  fs.push_back({atom, power});
}

}  // namespace detail

/// Canonical element of the fraction field of Q(i)[s,c,a,abar,rho,b]/(s^2+c^2-1).
///
/// The numerator is reduced (c-degree at most 1). The denominator is kept
/// factored as a sorted product of atoms, each c-free, real and monic; the
/// expanded product is therefore monic as well. Atoms come from a small basis
/// plus whatever irreducible-looking cofactors turn up, and the numerator is
/// trial-divided by them so common factors never accumulate.
class TrigRational {
 public:
  TrigRational() = default;
  TrigRational(GaussianRational c) : num_(std::move(c)) {}  // NOLINT
  TrigRational(long c) : num_(GaussianRational(c)) {}        // NOLINT
  explicit TrigRational(Polynomial p) : num_(p.reduce_circle()) {}

  static TrigRational var(Var v) { return TrigRational(Polynomial::var(v)); }

  /// num / den with den split into atoms. `hints` are tried as atoms before
  /// any leftover cofactor is accepted as a new one.
  static TrigRational fraction(const Polynomial& num, const Polynomial& den,
                               const std::vector<Polynomial>& hints = {}) {
    return build(num.reduce_circle(), {}, den, hints);
  }

  const Polynomial& numerator() const { return num_; }
  const std::vector<Factor>& factors() const { return den_; }
  Polynomial denominator() const { return detail::expand(den_); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  std::size_t term_count() const {
    std::size_t n = num_.size();
    for (const auto& f : den_) n += f.atom.size();
    return n;
  }
  bool depends_on(Var v) const {
    if (num_.depends_on(v)) return true;
    return std::any_of(den_.begin(), den_.end(), [v](const Factor& f) { return f.atom.depends_on(v); });
  }
  bool depends_on(DiffVar v) const {
    if (detail::poly_depends(num_, v)) return true;
    return std::any_of(den_.begin(), den_.end(), [v](const Factor& f) { return detail::poly_depends(f.atom, v); });
  }

  TrigRational operator-() const {
    TrigRational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend TrigRational operator+(const TrigRational& x, const TrigRational& y) { return add(x, y, false); }
  friend TrigRational operator-(const TrigRational& x, const TrigRational& y) { return add(x, y, true); }

  friend TrigRational operator*(const TrigRational& x, const TrigRational& y) {
    if (x.is_zero() || y.is_zero()) return {};
    Polynomial nx = x.num_, ny = y.num_;
    std::vector<Factor> fx = x.den_, fy = y.den_;
    detail::cancel(nx, fy);
    detail::cancel(ny, fx);
    bool both_c = nx.depends_on(Var::c) && ny.depends_on(Var::c);
    TrigRational r;
    r.num_ = (nx * ny).reduce_circle();
    r.den_ = std::move(fx);
    for (const auto& f : fy) detail::insert_factor(r.den_, f.atom, f.power);
    // c*c -> 1 - s^2 can introduce factors s - 1 and s + 1.
    if (both_c) detail::cancel(r.num_, r.den_);
    r.sort_factors();
    return r;
  }

  TrigRational inverse() const {
    if (is_zero()) throw ZeroDenominator();
    std::vector<Polynomial> hints;
    for (const auto& f : den_) hints.push_back(f.atom);
    return build(denominator(), {}, num_, hints);
  }

  friend TrigRational operator/(const TrigRational& x, const TrigRational& y) { return x * y.inverse(); }

  TrigRational& operator+=(const TrigRational& y) { return *this = *this + y; }
  TrigRational& operator-=(const TrigRational& y) { return *this = *this - y; }
  TrigRational& operator*=(const TrigRational& y) { return *this = *this * y; }
  TrigRational& operator/=(const TrigRational& y) { return *this = *this / y; }

  TrigRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return TrigRational(1);
    TrigRational r;
    r.num_ = num_.pow(static_cast<unsigned>(e)).reduce_circle();
    r.den_ = den_;
    for (auto& f : r.den_) f.power *= static_cast<unsigned>(e);
    if (num_.degree(Var::c) > 0 && e > 1) detail::cancel(r.num_, r.den_);
    return r;
  }

  /// Swaps a and abar and conjugates coefficients.
  TrigRational conjugate() const {
    TrigRational r;
    r.num_ = num_.conjugate();
    for (const auto& f : den_) {
      auto [lc, monic] = detail::make_monic(f.atom.conjugate());
      if (!lc.is_one()) r.num_ = r.num_.scaled(GaussianRational(1) / lc.pow(f.power));
      r.den_.push_back({std::move(monic), f.power});
    }
    r.sort_factors();
    return r;
  }

  /// Partial derivative; for alpha, ds = c and dc = -s.
  TrigRational differentiate(DiffVar v) const {
    TrigRational r;
    std::vector<std::size_t> dep;
    for (std::size_t k = 0; k < den_.size(); ++k)
      if (detail::poly_depends(den_[k].atom, v)) dep.push_back(k);
    if (dep.empty()) {
      r.num_ = detail::differentiate_poly(num_, v);
      r.den_ = den_;
      detail::cancel(r.num_, r.den_);
      return r;
    }
    // d(N / prod A_k^e_k) = (N' R - N sum e_k A_k' R / A_k) / (D R), R = prod of dependent atoms.
    Polynomial radical(1);
    for (auto k : dep) radical *= den_[k].atom;
    Polynomial sum;
    for (auto k : dep) {
      Polynomial others(1);
      for (auto j : dep)
        if (j != k) others *= den_[j].atom;
      sum += (detail::differentiate_poly(den_[k].atom, v) * others).scaled(static_cast<long>(den_[k].power));
    }
    r.num_ = (detail::differentiate_poly(num_, v) * radical - num_ * sum).reduce_circle();
    r.den_ = den_;
    for (auto k : dep) ++r.den_[k].power;
    detail::cancel(r.num_, r.den_);
    return r;
  }

  /// Numerator and denominator values; `convert` maps Q(i) coefficients into Field.
  template <class Field, class Convert>
  std::pair<Field, Field> evaluate_parts(const std::array<Field, 6>& values, Convert convert) const {
    Field n = num_.evaluate<Field>(values, convert);
    Field d(1);
    for (const auto& f : den_) {
      Field v = f.atom.evaluate<Field>(values, convert);
      for (unsigned k = 0; k < f.power; ++k) d = d * v;
    }
    return {n, d};
  }

  /// Exact value at (s, c, a, abar, rho, b); PoleAtPoint when a factor vanishes.
  GaussianRational evaluate(const std::array<GaussianRational, 6>& values) const {
    GaussianRational n = num_.evaluate(values);
    GaussianRational d(1);
    for (const auto& f : den_) {
      GaussianRational v = f.atom.evaluate(values);
      if (v.is_zero()) throw PoleAtPoint(f.atom.str());
      d *= v.pow(f.power);
    }
    return n / d;
  }

  /// Structural identity of canonical forms.
  friend bool operator==(const TrigRational& x, const TrigRational& y) {
    if (x.num_ != y.num_ || x.den_.size() != y.den_.size()) return false;
    for (std::size_t k = 0; k < x.den_.size(); ++k)
      if (x.den_[k].power != y.den_[k].power || x.den_[k].atom != y.den_[k].atom) return false;
    return true;
  }
  friend bool operator!=(const TrigRational& x, const TrigRational& y) { return !(x == y); }

  std::size_t hash() const {
    std::size_t h = num_.hash();
    for (const auto& f : den_) h = h * 31 + f.atom.hash() * (f.power + 1);
    return h;
  }

 private:
  static TrigRational add(const TrigRational& x, const TrigRational& y, bool subtract) {
    if (y.is_zero()) return x;
    if (x.is_zero()) return subtract ? -y : y;
    // Common denominator = factor-wise maximum; only atoms with equal powers
    // on both sides can divide the new numerator.
    std::vector<Factor> lcm;
    std::vector<Factor> mx, my;
    std::vector<bool> shared;
    std::size_t i = 0, j = 0;
    const auto& fx = x.den_;
    const auto& fy = y.den_;
    while (i < fx.size() || j < fy.size()) {
      if (j == fy.size() || (i < fx.size() && detail::atom_less(fx[i], fy[j]))) {
        lcm.push_back(fx[i]);
        my.push_back(fx[i]);
        shared.push_back(false);
        ++i;
      } else if (i == fx.size() || detail::atom_less(fy[j], fx[i])) {
        lcm.push_back(fy[j]);
        mx.push_back(fy[j]);
        shared.push_back(false);
        ++j;
      } else {
        unsigned px = fx[i].power, py = fy[j].power;
        lcm.push_back({fx[i].atom, std::max(px, py)});
        if (px < py) mx.push_back({fx[i].atom, py - px});
        if (py < px) my.push_back({fx[i].atom, px - py});
        shared.push_back(px == py);
        ++i;
        ++j;
      }
    }
    Polynomial left = mx.empty() ? x.num_ : x.num_ * detail::expand(mx);
    Polynomial right = my.empty() ? y.num_ : y.num_ * detail::expand(my);
    TrigRational r;
    r.num_ = subtract ? left - right : left + right;
    if (r.num_.is_zero()) return r;
    r.den_ = std::move(lcm);
    detail::cancel(r.num_, r.den_, &shared);
    return r;
  }

  // num / (known * raw): raw is split into atoms, rationalized if it has c or
  // non-real coefficients, and leftovers become new monic atoms.
  static TrigRational build(Polynomial num, std::vector<Factor> known, Polynomial raw,
                            const std::vector<Polynomial>& hints) {
    raw = raw.reduce_circle();
    if (raw.is_zero()) throw ZeroDenominator();
    TrigRational r;
    if (num.is_zero()) return r;
    std::vector<Factor> fs = std::move(known);
    const Polynomial s = Polynomial::var(Var::s);
    for (int round = 0;; ++round) {
      // monomial content
      Monomial content = raw.terms().back().mono;
      for (const auto& t : raw.terms()) content = gcd(content, t.mono);
      if (!content.is_one()) {
        raw = *raw.divide_exact(Polynomial::term(content, 1));
        for (Var v : kAllVars) {
          unsigned e = content[v];
          if (!e) continue;
          if (v == Var::c) {
            // 1/c^e = c^e / (1 - s^2)^e = (-1)^e c^e / ((s - 1)(s + 1))^e
            num = (num * Polynomial::var(Var::c, e)).reduce_circle();
            if (e % 2) num = -num;
            detail::insert_factor(fs, s - 1, e);
            detail::insert_factor(fs, s + 1, e);
          } else {
            detail::insert_factor(fs, Polynomial::var(v), e);
          }
        }
      }
      if (raw.depends_on(Var::c)) {
        Polynomial even, odd;
        std::vector<Term> ev, od;
        for (const auto& t : raw.terms()) {
          if (t.mono[Var::c]) od.push_back({t.mono.with(Var::c, 0), t.coef});
          else ev.push_back(t);
        }
        even = Polynomial::from_terms(std::move(ev));
        odd = Polynomial::from_terms(std::move(od));
        num = (num * (even - odd * Polynomial::var(Var::c))).reduce_circle();
        raw = even * even - (Polynomial(1) - s * s) * odd * odd;
        if (raw.is_zero()) throw ZeroDenominator();
        continue;
      }
      if (!raw.is_real()) {
        Polynomial cc = raw.conjugate_coefficients();
        num = (num * cc).reduce_circle();
        raw = raw * cc;
        continue;
      }
      break;
    }
    if (!raw.is_constant()) {
      auto split = [&](const Polynomial& atom) {
        if (atom.is_constant()) return;
        unsigned e = 0;
        while (!raw.is_constant()) {
          auto q = raw.divide_exact(atom);
          if (!q) break;
          raw = std::move(*q);
          ++e;
        }
        if (e) detail::insert_factor(fs, atom, e);
      };
      for (const auto& atom : detail::factor_basis()) split(atom);
      for (const auto& h : hints) split(h);
      std::vector<Polynomial> seen;
      for (const auto& f : fs) seen.push_back(f.atom);
      for (const auto& atom : seen) split(atom);
    }
    if (!raw.is_constant()) {
      auto [lc, monic] = detail::make_monic(raw);
      num = num.scaled(GaussianRational(1) / lc);
      detail::insert_factor(fs, monic, 1);
    } else {
      num = num.scaled(GaussianRational(1) / raw.constant_value());
    }
    detail::cancel(num, fs);
    r.num_ = std::move(num);
    r.den_ = std::move(fs);
    r.sort_factors();
    return r;
  }

  static Monomial gcd(Monomial x, Monomial y) {
    Monomial r;
    for (Var v : kAllVars) {
      unsigned e = std::min(x[v], y[v]);
      if (e) r = r * Monomial::var(v, e);
    }
    return r;
  }

  void sort_factors() { std::sort(den_.begin(), den_.end(), detail::atom_less); }

  Polynomial num_;
  std::vector<Factor> den_;
};

inline bool equals(const TrigRational& x, const TrigRational& y) { return (x - y).is_zero(); }

/// Rebuilds the canonical form from the expanded denominator.
inline TrigRational normalize(const TrigRational& e) {
  std::vector<Polynomial> hints;
  for (const auto& f : e.factors()) hints.push_back(f.atom);
  return TrigRational::fraction(e.numerator(), e.denominator(), hints);
}

inline TrigRational differentiate(const TrigRational& e, DiffVar v) { return e.differentiate(v); }
inline TrigRational conjugate(const TrigRational& e) { return e.conjugate(); }

}  // namespace pmc
