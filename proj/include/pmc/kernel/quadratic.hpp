#pragma once

#include <array>
#include <string>

#include "pmc/kernel/formula.hpp"

namespace pmc {

/// x + y*sqrt(d) over a base field. Elements with y = 0 carry no radicand;
/// mixing two different radicands is an error.
template <class Base>
class QuadExt {
 public:
  QuadExt() : x_(0), y_(0) {}
  QuadExt(long v) : x_(v), y_(0) {}  // NOLINT
  QuadExt(Base x) : x_(std::move(x)), y_(0) {}  // NOLINT
  QuadExt(Base x, Base y, long d) : x_(std::move(x)), y_(std::move(y)), d_(d) {}

  const Base& rational_part() const { return x_; }
  const Base& radical_part() const { return y_; }
  long radicand() const { return d_; }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

  friend QuadExt operator+(const QuadExt& u, const QuadExt& v) { return {u.x_ + v.x_, u.y_ + v.y_, join(u, v)}; }
  friend QuadExt operator-(const QuadExt& u, const QuadExt& v) { return {u.x_ - v.x_, u.y_ - v.y_, join(u, v)}; }
  friend QuadExt operator*(const QuadExt& u, const QuadExt& v) {
    long d = join(u, v);
    return {u.x_ * v.x_ + u.y_ * v.y_ * Base(d), u.x_ * v.y_ + u.y_ * v.x_, d};
  }
  QuadExt inverse() const {
    if (is_zero()) throw PoleAtPoint();
    Base norm = x_ * x_ - y_ * y_ * Base(d_);
    return {x_ / norm, (Base(0) - y_) / norm, d_};
  }
  friend QuadExt operator/(const QuadExt& u, const QuadExt& v) { return u * v.inverse(); }
  friend bool operator==(const QuadExt& u, const QuadExt& v) { return (u - v).is_zero(); }

 private:
  static long join(const QuadExt& u, const QuadExt& v) {
    if (u.y_.is_zero()) return v.d_;
    if (v.y_.is_zero()) return u.d_;
    if (u.d_ != v.d_) throw DomainError("mixed radicands");
    return u.d_;
  }

  Base x_, y_;
  long d_ = 0;
};

/// Angles where sin and cos lie in a quadratic extension of Q.
enum class SpecialAngle { Pi4, Pi3 };

inline const char* angle_name(SpecialAngle a) { return a == SpecialAngle::Pi4 ? "pi/4" : "pi/3"; }

/// (sin, cos) at a special angle.
template <class Base>
std::pair<QuadExt<Base>, QuadExt<Base>> special_sin_cos(SpecialAngle angle) {
  const Base half(GaussianRational(Rational(1, 2)));
  if (angle == SpecialAngle::Pi4) return {QuadExt<Base>(Base(0), half, 2), QuadExt<Base>(Base(0), half, 2)};
  return {QuadExt<Base>(Base(0), half, 3), QuadExt<Base>(half)};
}

template <class Base>
struct QuadTraits {
  static QuadExt<Base> from(const GaussianRational& q) { return QuadExt<Base>(Base(q)); }
  static bool is_zero(const QuadExt<Base>& x) { return x.is_zero(); }
  static QuadExt<Base> conj(const QuadExt<Base>& x) {
    return {conj_base(x.rational_part()), conj_base(x.radical_part()), x.radicand()};
  }
  static QuadExt<Base> inverse(const QuadExt<Base>& x) { return x.inverse(); }

 private:
  static GaussianRational conj_base(const GaussianRational& v) { return v.conj(); }
  static TrigRational conj_base(const TrigRational& v) { return v.conjugate(); }
};

/// Exact value of e at a special angle with a real a (so abar = a), and rho,
/// b given in the base field. With Base = TrigRational and rho, b passed as
/// the variables themselves the result is a rational function of (rho, b).
template <class Base>
QuadExt<Base> specialize(const TrigRational& e, SpecialAngle angle, const Base& a, const Base& rho, const Base& b) {
  auto [s, c] = special_sin_cos<Base>(angle);
  const std::array<QuadExt<Base>, 6> values = {s, c, QuadExt<Base>(a), QuadExt<Base>(a), QuadExt<Base>(rho),
                                               QuadExt<Base>(b)};
  auto [num, den] = e.evaluate_parts<QuadExt<Base>>(values, [](const GaussianRational& q) {
    return QuadTraits<Base>::from(q);
  });
  return num / den;
}

/// Same as above for an unmaterialized Formula, via the memoized evaluator.
template <class Base>
QuadExt<Base> specialize(const Formula& f, SpecialAngle angle, const Base& a, const Base& rho, const Base& b) {
  auto [s, c] = special_sin_cos<Base>(angle);
  Evaluator<QuadExt<Base>, QuadTraits<Base>> ev(
      {s, c, QuadExt<Base>(a), QuadExt<Base>(a), QuadExt<Base>(rho), QuadExt<Base>(b)});
  return ev.eval(f);
}

}  // namespace pmc
