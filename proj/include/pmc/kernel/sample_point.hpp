#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "pmc/kernel/trig_rational.hpp"

namespace pmc {

/// Exact rational point with s = 2t/(1+t^2), c = (1-t^2)/(1+t^2) and
/// abar = conj(a).
struct SamplePoint {
  Rational t;
  Rational a_re;
  Rational a_im;
  Rational rho;
  Rational b;

  Rational s() const { return 2 * t / (1 + t * t); }
  Rational c() const { return (1 - t * t) / (1 + t * t); }
  GaussianRational a() const { return {a_re, a_im}; }

  /// Values of (s, c, a, abar, rho, b) in variable order.
  std::array<GaussianRational, 6> values() const {
    return {GaussianRational(s()), GaussianRational(c()), a(), a().conj(), GaussianRational(rho),
            GaussianRational(b)};
  }

  std::string str() const {
    return "t=" + t.get_str() + ",a=" + a().str() + ",rho=" + rho.get_str() + ",b=" + b.get_str();
  }

  friend bool operator==(const SamplePoint& x, const SamplePoint& y) {
    return x.t == y.t && x.a_re == y.a_re && x.a_im == y.a_im && x.rho == y.rho && x.b == y.b;
  }
};

namespace detail {

inline Rational draw_rational(std::mt19937_64& gen, long max_num, long max_den) {
  long num = static_cast<long>(gen() % static_cast<std::uint64_t>(2 * max_num + 1)) - max_num;
  long den = 1 + static_cast<long>(gen() % static_cast<std::uint64_t>(max_den));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace detail

/// Deterministic admissible point. Seed 0 is t = 1/2 (s = 4/5, c = 3/5),
/// a = 1/3 + i/5, rho = 1, b = 1; other seeds draw from bounded pools.
inline SamplePoint sample_point(std::uint64_t seed) {
  if (seed == 0) return {Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1), Rational(1)};
  std::mt19937_64 gen(0x5eed0000ULL + seed);
  SamplePoint p;
  do p.t = detail::draw_rational(gen, 40, 29);
  while (p.t == 0 || p.t == 1 || p.t == -1);
  p.a_re = detail::draw_rational(gen, 40, 17);
  do p.a_im = detail::draw_rational(gen, 40, 17);
  while (p.a_im == 0);  // keeps a != +-b since b is real
  do p.rho = detail::draw_rational(gen, 20, 7);
  while (p.rho == 0);
  do p.b = detail::draw_rational(gen, 20, 7);
  while (p.b <= 0);
  return p;
}

struct SampledVerdict {
  bool probably_zero = true;
  std::optional<SamplePoint> witness;
  GaussianRational witness_value;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

/// Evaluates `value_at(point)` at n admissible points starting from `seed`.
/// Points where it throws PoleAtPoint are skipped and replaced.
template <class ValueAt>
SampledVerdict sampled_zero_test(ValueAt value_at, std::size_t n, std::uint64_t seed) {
  SampledVerdict v;
  for (std::uint64_t k = seed; v.evaluated < n; ++k) {
    if (v.skipped > 4 * n + 16) throw NumericError("too many poles while sampling");
    SamplePoint pt = sample_point(k);
    GaussianRational value;
    try {
      value = value_at(pt);
    } catch (const PoleAtPoint&) {
      ++v.skipped;
      continue;
    }
    ++v.evaluated;
    if (!value.is_zero()) {
      v.probably_zero = false;
      v.witness = pt;
      v.witness_value = value;
      return v;
    }
  }
  return v;
}

inline SampledVerdict is_zero_sampled(const TrigRational& e, std::size_t n, std::uint64_t seed) {
  return sampled_zero_test([&](const SamplePoint& pt) { return e.evaluate(pt.values()); }, n, seed);
}

inline GaussianRational eval_exact(const TrigRational& e, const SamplePoint& pt) { return e.evaluate(pt.values()); }

}  // namespace pmc
