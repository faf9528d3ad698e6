#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>

#include "pmc/kernel/errors.hpp"

namespace pmc {

using Rational = mpq_class;

/// Parses "p", "-p/q" into a canonical rational.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw DomainError("not a rational literal: " + text);
  if (q.get_den() == 0) throw DomainError("zero denominator in literal: " + text);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Exact element re + im*i of Q(i). mpq_class keeps both parts in lowest
/// terms with positive denominators after every operation.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2 as a rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw PoleAtPoint("division by zero in Q(i)");
    if (o.is_real()) {
      re_ /= o.re_;
      if (sgn(im_) != 0) im_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    GaussianRational t = *this * o.conj();
    re_ = t.re_ / n;
    im_ = t.im_ / n;
    return *this;
  }

  /// this += x * y without building an intermediate GaussianRational.
  void add_product(const GaussianRational& x, const GaussianRational& y) {
    if (x.is_real() && y.is_real()) {
      re_ += x.re_ * y.re_;
      return;
    }
    re_ += x.re_ * y.re_ - x.im_ * y.im_;
    im_ += x.re_ * y.im_ + x.im_ * y.re_;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  GaussianRational pow(long e) const {
    if (e < 0) return (GaussianRational(1) / *this).pow(-e);
    GaussianRational result(1), base = *this;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::string>{}(re_.get_str());
    if (!is_real()) h ^= std::hash<std::string>{}(im_.get_str()) * 0x9e3779b97f4a7c15ULL;
    return h;
  }

  /// "3/4", "-i", "1/2+3/5*i". Used for diagnostics and reports.
  std::string str() const {
    if (is_real()) return re_.get_str();
    std::string im;
    if (im_ == 1)
      im = "i";
    else if (im_ == -1)
      im = "-i";
    else
      im = im_.get_str() + "*i";
    if (sgn(re_) == 0) return im;
    return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace pmc
