#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pmc/kernel/budget.hpp"
#include "pmc/kernel/gaussian_rational.hpp"
#include "pmc/kernel/monomial.hpp"

namespace pmc {

struct Term {
  Monomial mono;
  GaussianRational coef;
};

/// Sparse multivariate polynomial over Q(i) in s, c, a, abar, rho, b.
///
/// Terms are kept strictly decreasing in monomial order with no zero
/// coefficients, so structural equality is polynomial equality. Reduction
/// modulo s^2 + c^2 - 1 is explicit (reduce_circle); TrigRational keeps its
/// numerators reduced.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(GaussianRational c) {  // NOLINT: constants convert implicitly
    if (!c.is_zero()) terms_.push_back({Monomial(), std::move(c)});
  }
  Polynomial(long c) : Polynomial(GaussianRational(c)) {}  // NOLINT
  Polynomial(const Rational& c) : Polynomial(GaussianRational(c)) {}  // NOLINT

  static Polynomial var(Var v, unsigned e = 1) { return term(Monomial::var(v, e), 1); }
  static Polynomial term(Monomial m, GaussianRational c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
    return p;
  }
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    Polynomial p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
    budget::check(p.terms_.size());
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  GaussianRational constant_value() const {
    if (terms_.empty()) return 0;
    return terms_.back().mono.is_one() ? terms_.back().coef : GaussianRational(0);
  }
  const Term& leading() const { return terms_.front(); }

  bool is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef.is_real(); });
  }
  unsigned degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[v]);
    return d;
  }
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  bool depends_on(Var v) const { return degree(v) > 0; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Polynomial operator+(const Polynomial& x, const Polynomial& y) { return merge(x, y, false); }
  friend Polynomial operator-(const Polynomial& x, const Polynomial& y) { return merge(x, y, true); }
  Polynomial& operator+=(const Polynomial& y) { return *this = merge(*this, y, false); }
  Polynomial& operator-=(const Polynomial& y) { return *this = merge(*this, y, true); }

  Polynomial scaled(const GaussianRational& k) const {
    if (k.is_zero()) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef *= k;
    return r;
  }
  Polynomial times_monomial(Monomial m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;
  }

  /// Heap-merge product (Johnson); output arrives in monomial order.
  friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
    if (x.is_zero() || y.is_zero()) return {};
    const Polynomial& small = x.size() <= y.size() ? x : y;
    const Polynomial& large = x.size() <= y.size() ? y : x;
    if (small.size() == 1) {
      Polynomial r = large.times_monomial(small.terms_[0].mono);
      if (!small.terms_[0].coef.is_one())
        for (auto& t : r.terms_) t.coef *= small.terms_[0].coef;
      return r;
    }
    budget::check(small.size() * large.size() / 64);
    struct Entry {
      Monomial m;
      std::uint32_t i, j;
      bool operator<(const Entry& o) const { return m < o.m; }
    };
    std::priority_queue<Entry> heap;
    for (std::uint32_t i = 0; i < small.size(); ++i)
      heap.push({small.terms_[i].mono * large.terms_[0].mono, i, 0});
    Polynomial r;
    GaussianRational acc;
    Monomial current;
    bool open = false;
    while (!heap.empty()) {
      Entry e = heap.top();
      heap.pop();
      if (!open || e.m != current) {
        if (open && !acc.is_zero()) {
          r.terms_.push_back({current, std::move(acc)});
          if ((r.terms_.size() & 0xFFF) == 0) budget::check(r.terms_.size());
        }
        acc = GaussianRational();
        current = e.m;
        open = true;
      }
      acc.add_product(small.terms_[e.i].coef, large.terms_[e.j].coef);
      if (e.j + 1 < large.size()) heap.push({small.terms_[e.i].mono * large.terms_[e.j + 1].mono, e.i, e.j + 1});
    }
    if (open && !acc.is_zero()) r.terms_.push_back({current, std::move(acc)});
    budget::check(r.terms_.size());
    return r;
  }
  Polynomial& operator*=(const Polynomial& y) { return *this = *this * y; }

  Polynomial pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Rewrites c^2 -> 1 - s^2 until every monomial has c-degree at most 1.
  Polynomial reduce_circle() const {
    bool needed = std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono[Var::c] > 1; });
    if (!needed) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() * 2);
    for (const auto& t : terms_) {
      unsigned ec = t.mono[Var::c];
      if (ec < 2) {
        out.push_back(t);
        continue;
      }
      // c^ec = c^(ec mod 2) * sum_k C(n,k) (-1)^k s^(2k), n = ec / 2
      unsigned n = ec / 2;
      Monomial base = t.mono.with(Var::c, ec % 2);
      mpz_class binom = 1;
      for (unsigned k = 0; k <= n; ++k) {
        GaussianRational coef = t.coef * GaussianRational(Rational(binom));
        if (k % 2) coef = -coef;
        out.push_back({base * Monomial::var(Var::s, 2 * k), std::move(coef)});
        binom = binom * (n - k) / (k + 1);
      }
    }
    return from_terms(std::move(out));
  }

  /// Formal partial derivative (s and c treated as independent).
  Polynomial partial(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.mono[v];
      if (!e) continue;
      out.push_back({t.mono.with(v, e - 1), t.coef * GaussianRational(static_cast<long>(e))});
    }
    return from_terms(std::move(out));
  }

  /// Exchanges a and abar and conjugates every coefficient.
  Polynomial conjugate() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono.swap_a(), t.coef.conj()});
    return from_terms(std::move(out));
  }
  /// Conjugates coefficients only.
  Polynomial conjugate_coefficients() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = t.coef.conj();
    return r;
  }

  /// Substitutes values for all six variables. `convert` maps a coefficient
  /// into the value field.
  template <class Field, class Convert>
  Field evaluate(const std::array<Field, 6>& values, Convert convert) const {
    std::array<std::vector<Field>, 6> powers;
    for (int v = 0; v < 6; ++v) powers[v].push_back(Field(1));
    Field sum(0);
    for (const auto& t : terms_) {
      Field term = convert(t.coef);
      for (int v = 0; v < 6; ++v) {
        unsigned e = t.mono[static_cast<Var>(v)];
        if (!e) continue;
        auto& pw = powers[v];
        while (pw.size() <= e) pw.push_back(pw.back() * values[v]);
        term = term * pw[e];
      }
      sum = sum + term;
    }
    return sum;
  }

  GaussianRational evaluate(const std::array<GaussianRational, 6>& values) const {
    return evaluate<GaussianRational>(values, [](const GaussianRational& c) { return c; });
  }

  /// Quick modular screen: false means `d` certainly does not divide this.
  bool may_be_divisible_by(const Polynomial& d) const;

  /// Exact quotient if `d` divides this in the free polynomial ring.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;

  friend bool operator==(const Polynomial& x, const Polynomial& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t k = 0; k < x.terms_.size(); ++k)
      if (x.terms_[k].mono != y.terms_[k].mono || x.terms_[k].coef != y.terms_[k].coef) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& x, const Polynomial& y) { return !(x == y); }

  /// Total order used to sort factor lists deterministically.
  friend bool structurally_less(const Polynomial& x, const Polynomial& y) {
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (x.terms_[k].mono != y.terms_[k].mono) return x.terms_[k].mono < y.terms_[k].mono;
      const auto& cx = x.terms_[k].coef;
      const auto& cy = y.terms_[k].coef;
      if (cx.real() != cy.real()) return cx.real() < cy.real();
      if (cx.imag() != cy.imag()) return cx.imag() < cy.imag();
    }
    return x.size() < y.size();
  }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) h = h * 1000003u ^ (t.mono.packed() + 0x9e3779b97f4a7c15ULL * t.coef.hash());
    return h;
  }

  /// Debug form: "3/2*rho*s^2 - a".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      std::string c = t.coef.str();
      bool neg = !c.empty() && c[0] == '-' && t.coef.is_real();
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      if (neg) c = c.substr(1);
      if (!t.coef.is_real()) c = "(" + c + ")";
      if (t.mono.is_one()) out += c;
      else if (c == "1") out += t.mono.str();
      else out += c + "*" + t.mono.str();
    }
    return out;
  }

 private:
  static Polynomial merge(const Polynomial& x, const Polynomial& y, bool subtract) {
    Polynomial r;
    r.terms_.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x.terms_[i].mono > y.terms_[j].mono)) {
        r.terms_.push_back(x.terms_[i++]);
      } else if (i == x.size() || y.terms_[j].mono > x.terms_[i].mono) {
        r.terms_.push_back(y.terms_[j++]);
        if (subtract) r.terms_.back().coef = -r.terms_.back().coef;
      } else {
        GaussianRational c = subtract ? x.terms_[i].coef - y.terms_[j].coef : x.terms_[i].coef + y.terms_[j].coef;
        if (!c.is_zero()) r.terms_.push_back({x.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    budget::check(r.terms_.size());
    return r;
  }

  std::vector<Term> terms_;
};

namespace detail {

// Arithmetic modulo the Mersenne prime 2^61 - 1 for divisibility screening.
inline constexpr std::uint64_t kScreenPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mod_mul(std::uint64_t x, std::uint64_t y) {
  unsigned __int128 p = static_cast<unsigned __int128>(x) * y;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kScreenPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  return r >= kScreenPrime ? r - kScreenPrime : r;
}
inline std::uint64_t mod_add(std::uint64_t x, std::uint64_t y) {
  std::uint64_t r = x + y;
  return r >= kScreenPrime ? r - kScreenPrime : r;
}
inline std::uint64_t mod_sub(std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + kScreenPrime - y; }
inline std::uint64_t mod_pow(std::uint64_t x, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, x);
    x = mod_mul(x, x);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t mod_inv(std::uint64_t x) { return mod_pow(x, kScreenPrime - 2); }

inline std::uint64_t mod_of(const mpz_class& z) {
  mpz_class r = z % mpz_class(static_cast<unsigned long>(kScreenPrime));
  if (r < 0) r += static_cast<unsigned long>(kScreenPrime);
  return r.get_ui();
}

/// Residue of a rational, or nullopt when the denominator vanishes mod p.
inline std::optional<std::uint64_t> mod_of(const Rational& q) {
  std::uint64_t d = mod_of(q.get_den());
  if (d == 0) return std::nullopt;
  return mod_mul(mod_of(q.get_num()), mod_inv(d));
}

// Fixed evaluation points keep screening (and therefore canonical forms)
// deterministic.
inline constexpr std::array<std::uint64_t, 6> kScreenPoint = {
    1234567891011ULL, 987654321987ULL, 555555555511ULL, 31415926535897ULL, 27182818284590ULL, 16180339887498ULL};

}  // namespace detail

inline bool Polynomial::may_be_divisible_by(const Polynomial& d) const {
  if (d.is_zero()) return false;
  if (is_zero() || d.is_constant()) return true;
  if (!leading().mono.divisible_by(d.leading().mono)) return false;
  for (Var v : kAllVars)
    if (d.degree(v) > degree(v)) return false;
  if (!is_real() || !d.is_real()) return true;

  Var main = Var::s;
  unsigned best = 0;
  for (Var v : kAllVars) {
    unsigned dv = d.degree(v);
    if (dv > best) best = dv, main = v;
  }
  auto image = [&](const Polynomial& p, unsigned deg) -> std::optional<std::vector<std::uint64_t>> {
    std::vector<std::uint64_t> out(deg + 1, 0);
    for (const auto& t : p.terms_) {
      auto c = detail::mod_of(t.coef.real());
      if (!c) return std::nullopt;
      std::uint64_t val = *c;
      for (Var v : kAllVars) {
        if (v == main) continue;
        unsigned e = t.mono[v];
        if (e) val = detail::mod_mul(val, detail::mod_pow(detail::kScreenPoint[static_cast<int>(v)], e));
      }
      auto& slot = out[t.mono[main]];
      slot = detail::mod_add(slot, val);
    }
    return out;
  };
  auto num = image(*this, degree(main));
  auto den = image(d, best);
  if (!num || !den || (*den)[best] == 0) return true;
  std::vector<std::uint64_t>& r = *num;
  std::uint64_t lead_inv = detail::mod_inv((*den)[best]);
  for (std::size_t k = r.size(); k-- > best;) {
    if (r[k] == 0) continue;
    std::uint64_t q = detail::mod_mul(r[k], lead_inv);
    for (unsigned j = 0; j <= best; ++j) r[k - best + j] = detail::mod_sub(r[k - best + j], detail::mod_mul(q, (*den)[j]));
  }
  for (unsigned k = 0; k < best; ++k)
    if (r[k] != 0) return false;
  return true;
}

inline std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw ZeroDenominator();
  if (is_zero()) return Polynomial();
  if (d.size() == 1) {
    const Term& dt = d.terms_[0];
    Polynomial q;
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!t.mono.divisible_by(dt.mono)) return std::nullopt;
      q.terms_.push_back({t.mono / dt.mono, t.coef / dt.coef});
    }
    return q;
  }
  if (!may_be_divisible_by(d)) return std::nullopt;

  // Heap division: the remainder is never materialized; its next term is the
  // larger of the next dividend term and the largest pending q_k * d_j.
  struct Entry {
    Monomial m;
    std::uint32_t k, j;
    bool operator<(const Entry& o) const { return m < o.m; }
  };
  std::priority_queue<Entry> heap;
  Polynomial q;
  const Term& lead = d.terms_[0];
  std::size_t fi = 0;
  while (fi < terms_.size() || !heap.empty()) {
    Monomial m;
    if (heap.empty() || (fi < terms_.size() && terms_[fi].mono > heap.top().m))
      m = terms_[fi].mono;
    else
      m = heap.top().m;
    GaussianRational c;
    if (fi < terms_.size() && terms_[fi].mono == m) c = terms_[fi++].coef;
    while (!heap.empty() && heap.top().m == m) {
      Entry e = heap.top();
      heap.pop();
      c -= q.terms_[e.k].coef * d.terms_[e.j].coef;
      if (e.j + 1 < d.size()) heap.push({q.terms_[e.k].mono * d.terms_[e.j + 1].mono, e.k, e.j + 1});
    }
    if (c.is_zero()) continue;
    if (!m.divisible_by(lead.mono)) return std::nullopt;
    q.terms_.push_back({m / lead.mono, c / lead.coef});
    auto k = static_cast<std::uint32_t>(q.terms_.size() - 1);
    heap.push({q.terms_[k].mono * d.terms_[1].mono, k, 1});
    if ((q.terms_.size() & 0xFFF) == 0) budget::check(q.terms_.size());
  }
  return q;
}

}  // namespace pmc
