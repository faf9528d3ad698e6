#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "pmc/kernel/formula.hpp"

namespace pmc {

/// Formal jet symbols: X = a_alpha, Y = abar_alpha, X2 = a_alpha_alpha,
/// Y2 its conjugate, C = c, Cbar, W = c_alpha, Wbar, P = p23, Pbar.
enum class Sym : std::uint8_t { X, Y, X2, Y2, C, Cbar, W, Wbar, P, Pbar };

inline constexpr std::array<Sym, 10> kAllSyms = {Sym::X, Sym::Y,    Sym::X2, Sym::Y2,   Sym::C,
                                                 Sym::Cbar, Sym::W, Sym::Wbar, Sym::P, Sym::Pbar};

inline const char* sym_name(Sym s) {
  constexpr std::array<const char*, 10> names = {"X", "Y", "X2", "Y2", "C", "Cbar", "W", "Wbar", "P", "Pbar"};
  return names[static_cast<int>(s)];
}

/// Image of a symbol under conjugation.
inline Sym conj_sym(Sym s) {
  auto k = static_cast<int>(s);
  return static_cast<Sym>(k % 2 ? k - 1 : k + 1);
}

/// Product of jet symbol powers, six bits per exponent.
class JetMono {
 public:
  static constexpr int kBits = 6;
  static constexpr std::uint64_t kMask = 0x3F;

  constexpr JetMono() = default;
  static JetMono sym(Sym s, unsigned e = 1) {
    if (e > kMask) throw Error("jet exponent overflow");
    return JetMono(std::uint64_t{e} << shift(s));
  }

  unsigned operator[](Sym s) const { return static_cast<unsigned>((bits_ >> shift(s)) & kMask); }
  bool is_one() const { return bits_ == 0; }
  std::uint64_t packed() const { return bits_; }

  JetMono with(Sym s, unsigned e) const {
    if (e > kMask) throw Error("jet exponent overflow");
    return JetMono((bits_ & ~(kMask << shift(s))) | (std::uint64_t{e} << shift(s)));
  }
  friend JetMono operator*(JetMono x, JetMono y) {
    JetMono r;
    for (Sym s : kAllSyms) r = r.with(s, x[s] + y[s]);
    return r;
  }
  JetMono conj() const {
    JetMono r;
    for (Sym s : kAllSyms) r = r.with(conj_sym(s), (*this)[s]);
    return r;
  }
  unsigned degree() const {
    unsigned d = 0;
    for (Sym s : kAllSyms) d += (*this)[s];
    return d;
  }

  friend bool operator<(JetMono x, JetMono y) { return x.bits_ < y.bits_; }
  friend bool operator==(JetMono x, JetMono y) { return x.bits_ == y.bits_; }
  friend bool operator!=(JetMono x, JetMono y) { return x.bits_ != y.bits_; }

  std::string str() const {
    if (is_one()) return "1";
    std::string out;
    for (Sym s : kAllSyms) {
      unsigned e = (*this)[s];
      if (!e) continue;
      if (!out.empty()) out += '*';
      out += sym_name(s);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  constexpr explicit JetMono(std::uint64_t b) : bits_(b) {}
  static constexpr int shift(Sym s) { return static_cast<int>(s) * kBits; }
  std::uint64_t bits_ = 0;
};

// Coefficient protocol for JetPoly; overloaded for Formula and TrigRational.
inline bool coeff_is_zero(const Formula& f) { return f.is_zero(); }
inline Formula coeff_conj(const Formula& f) { return f.conj(); }
inline Formula coeff_diff(const Formula& f, DiffVar v) { return f.diff(v); }
inline bool coeff_is_zero(const TrigRational& f) { return f.is_zero(); }
inline TrigRational coeff_conj(const TrigRational& f) { return f.conjugate(); }
inline TrigRational coeff_diff(const TrigRational& f, DiffVar v) { return f.differentiate(v); }

/// Polynomial in jet symbols with coefficients in a base ring.
template <class Coeff>
class JetPoly {
 public:
  using TermMap = std::map<JetMono, Coeff>;

  JetPoly() = default;
  JetPoly(Coeff c) { add_term(JetMono(), std::move(c)); }  // NOLINT
  JetPoly(long c) : JetPoly(Coeff(c)) {}                     // NOLINT

  static JetPoly sym(Sym s, unsigned e = 1) { return term(JetMono::sym(s, e), Coeff(1)); }
  static JetPoly term(JetMono m, Coeff c) {
    JetPoly p;
    p.add_term(m, std::move(c));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of a monomial (zero when absent).
  Coeff coeff(JetMono m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff() : it->second;
  }

  bool has(Sym s) const {
    for (const auto& [m, c] : terms_)
      if (m[s]) return true;
    return false;
  }
  unsigned degree(Sym s) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[s]);
    return d;
  }

  void add_term(JetMono m, Coeff c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  JetPoly operator-() const {
    JetPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend JetPoly operator+(JetPoly x, const JetPoly& y) {
    for (const auto& [m, c] : y.terms_) x.add_term(m, c);
    return x;
  }
  friend JetPoly operator-(JetPoly x, const JetPoly& y) {
    for (const auto& [m, c] : y.terms_) x.add_term(m, -c);
    return x;
  }
  friend JetPoly operator*(const JetPoly& x, const JetPoly& y) {
    JetPoly r;
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
    return r;
  }
  JetPoly& operator+=(const JetPoly& y) { return *this = *this + y; }
  JetPoly& operator-=(const JetPoly& y) { return *this = *this - y; }
  JetPoly& operator*=(const JetPoly& y) { return *this = *this * y; }

  JetPoly scaled(const Coeff& k) const {
    JetPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * k);
    return r;
  }
  JetPoly times(JetMono m) const {
    JetPoly r;
    for (const auto& [mm, c] : terms_) r.terms_.emplace(mm * m, c);
    return r;
  }
  JetPoly pow(unsigned e) const {
    JetPoly r(1);
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  /// Conjugates coefficients and swaps every symbol with its partner.
  JetPoly conj() const {
    JetPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m.conj(), coeff_conj(c));
    return r;
  }

  /// Replaces symbol `s` by `value` everywhere.
  JetPoly substitute(Sym s, const JetPoly& value) const {
    JetPoly r;
    std::map<unsigned, JetPoly> powers;
    for (const auto& [m, c] : terms_) {
      unsigned e = m[s];
      if (!e) {
        r.add_term(m, c);
        continue;
      }
      auto it = powers.find(e);
      if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
      r += it->second.times(m.with(s, 0)).scaled(c);
    }
    return r;
  }

  /// Maps every coefficient through f.
  template <class F>
  auto map_coeffs(F f) const {
    using Out = decltype(f(std::declval<const Coeff&>()));
    JetPoly<Out> r;
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  /// Evaluates with numeric symbol values; `eval_coeff` maps a coefficient to Field.
  template <class Field, class EvalCoeff>
  Field evaluate(const std::array<Field, 10>& sym_values, EvalCoeff eval_coeff) const {
    Field sum(0);
    for (const auto& [m, c] : terms_) {
      Field t = eval_coeff(c);
      for (Sym s : kAllSyms)
        for (unsigned k = 0; k < m[s]; ++k) t = t * sym_values[static_cast<int>(s)];
      sum = sum + t;
    }
    return sum;
  }

 private:
  TermMap terms_;
};

}  // namespace pmc
