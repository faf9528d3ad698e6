#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "pmc/kernel/formula.hpp"

namespace pmc {

/// Binary floating point at the configured significand size.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using ComplexF = std::complex<Real>;

/// Tolerances are stated at 128 bits as powers of ten and scale linearly with
/// the precision.
struct NumericConfig {
  unsigned precision_bits = 128;
  double tol_den = -30;   // poles: denominators below this are PoleNearPoint
  double tol_root = -25;  // cubic residuals
  double tol_conj = -20;  // conjugate pairing and realness of roots
  double tol_lead = -30;  // degenerate leading coefficient, relative
  double tol_real = -20;  // relative imaginary part of real coefficients
  double tol_coherence = -25;

  Real scaled(double exponent) const {
    return boost::multiprecision::pow(Real(10), Real(exponent * precision_bits / 128.0));
  }
};

/// Process-wide settings; change only before worker threads start.
inline NumericConfig& numeric_config() {
  static NumericConfig config = [] {
    Real::default_precision(40);
    return NumericConfig{};
  }();
  return config;
}

namespace detail {
// Applies the default precision before main so that no Real is created at 20 digits.
inline const bool precision_initialized = (numeric_config(), true);
}  // namespace detail

inline void set_precision_bits(unsigned bits) {
  if (bits < 24 || bits > 4096) throw ConfigError("precision must be between 24 and 4096 bits");
  numeric_config().precision_bits = bits;
  Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
}

inline Real to_real(const Rational& q) {
  (void)numeric_config();
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline ComplexF to_complex(const GaussianRational& q) { return {to_real(q.real()), to_real(q.imag())}; }

inline Real magnitude(const ComplexF& z) { return boost::multiprecision::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

inline bool is_finite(const ComplexF& z) {
  return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}

inline ComplexF checked(const ComplexF& z) {
  if (!is_finite(z)) throw NumericError("non-finite value");
  return z;
}

inline std::string format_real(const Real& x, int digits = 20) {
  std::ostringstream out;
  out << std::setprecision(digits) << x;
  return out.str();
}

inline std::string format_complex(const ComplexF& z, int digits = 20) {
  std::string re = format_real(z.real(), digits), im = format_real(boost::multiprecision::abs(z.imag()), digits);
  return re + (z.imag() < 0 ? " - " : " + ") + im + "i";
}

/// Evaluator hooks for ComplexF; inversion guards against near-poles.
struct ComplexTraits {
  static ComplexF from(const GaussianRational& q) { return to_complex(q); }
  static bool is_zero(const ComplexF& x) { return magnitude(x) == 0; }
  static ComplexF conj(const ComplexF& x) { return std::conj(x); }
  static ComplexF inverse(const ComplexF& x) {
    if (magnitude(x) < numeric_config().scaled(numeric_config().tol_den)) throw PoleNearPoint();
    Real n = x.real() * x.real() + x.imag() * x.imag();
    return {x.real() / n, -x.imag() / n};
  }
};

}  // namespace pmc
