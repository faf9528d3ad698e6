#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "pmc/kernel/errors.hpp"

namespace pmc {

/// Ring variables: s = sin(alpha), c = cos(alpha), a, abar, rho, b.
enum class Var : std::uint8_t { s = 0, c = 1, a = 2, abar = 3, rho = 4, b = 5 };

inline constexpr std::array<Var, 6> kAllVars = {Var::s, Var::c, Var::a, Var::abar, Var::rho, Var::b};

inline constexpr std::string_view var_name(Var v) {
  constexpr std::array<std::string_view, 6> names = {"s", "c", "a", "abar", "rho", "b"};
  return names[static_cast<int>(v)];
}

/// Exponent vector packed into one word so that plain integer comparison is
/// graded lexicographic order with s < c < a < abar < rho < b.
///
/// Layout: six 9-bit fields (bit 8 of each is a carry guard, so exponents stay
/// below 256) and a 10-bit total degree on top (guarded below 512).
class Monomial {
 public:
  static constexpr int kFieldBits = 9;
  static constexpr int kDegreeShift = 54;
  static constexpr std::uint64_t kFieldMask = 0x1FF;
  static constexpr std::uint64_t kMaxExponent = 255;
  static constexpr std::uint64_t kMaxDegree = 511;
  static constexpr std::uint64_t kGuard = [] {
    std::uint64_t g = 0;
    for (int i = 0; i < 6; ++i) g |= std::uint64_t{1} << (i * kFieldBits + 8);
    return g | (std::uint64_t{1} << 63);
  }();

  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t packed) : bits_(packed) {}

  static Monomial var(Var v, unsigned e = 1) {
    check_exponent(e);
    return Monomial((std::uint64_t{e} << shift(v)) | (std::uint64_t{e} << kDegreeShift));
  }

  constexpr std::uint64_t packed() const { return bits_; }
  constexpr unsigned degree() const { return static_cast<unsigned>(bits_ >> kDegreeShift); }
  constexpr unsigned operator[](Var v) const { return static_cast<unsigned>((bits_ >> shift(v)) & kFieldMask); }
  constexpr bool is_one() const { return bits_ == 0; }

  Monomial with(Var v, unsigned e) const {
    check_exponent(e);
    unsigned old = (*this)[v];
    std::uint64_t b = bits_ & ~(kFieldMask << shift(v));
    b |= std::uint64_t{e} << shift(v);
    std::uint64_t deg = degree() - old + e;
    if (deg > kMaxDegree) throw Error("monomial degree overflow");
    b = (b & ((std::uint64_t{1} << kDegreeShift) - 1)) | (deg << kDegreeShift);
    return Monomial(b);
  }

  friend Monomial operator*(Monomial x, Monomial y) {
    std::uint64_t r = x.bits_ + y.bits_;
    if (r & kGuard) throw Error("monomial exponent overflow");
    return Monomial(r);
  }

  /// True when every exponent of `d` is at most the matching one here.
  constexpr bool divisible_by(Monomial d) const {
    return (((bits_ | kGuard) - d.bits_) & kGuard) == kGuard;
  }
  /// Requires divisible_by(d).
  constexpr Monomial operator/(Monomial d) const { return Monomial(bits_ - d.bits_); }

  friend constexpr bool operator==(Monomial x, Monomial y) { return x.bits_ == y.bits_; }
  friend constexpr bool operator!=(Monomial x, Monomial y) { return x.bits_ != y.bits_; }
  friend constexpr bool operator<(Monomial x, Monomial y) { return x.bits_ < y.bits_; }
  friend constexpr bool operator>(Monomial x, Monomial y) { return x.bits_ > y.bits_; }

  /// Exchanges the a and abar exponents.
  Monomial swap_a() const {
    unsigned ea = (*this)[Var::a], eb = (*this)[Var::abar];
    std::uint64_t b = bits_ & ~((kFieldMask << shift(Var::a)) | (kFieldMask << shift(Var::abar)));
    b |= (std::uint64_t{eb} << shift(Var::a)) | (std::uint64_t{ea} << shift(Var::abar));
    return Monomial(b);
  }

  std::string str() const {
    if (is_one()) return "1";
    std::string out;
    for (Var v : kAllVars) {
      unsigned e = (*this)[v];
      if (!e) continue;
      if (!out.empty()) out += '*';
      out += var_name(v);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  static constexpr int shift(Var v) { return static_cast<int>(v) * kFieldBits; }
  static void check_exponent(unsigned e) {
    if (e > kMaxExponent) throw Error("monomial exponent overflow");
  }

  std::uint64_t bits_ = 0;
};

}  // namespace pmc
