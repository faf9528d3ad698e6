#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/eigen.hpp>

#include "pmc/catalog/catalog.hpp"
#include "pmc/kernel/quadratic.hpp"
#include "pmc/kernel/sample_point.hpp"
#include "pmc/numeric/complex_f.hpp"

namespace pmc {

/// Parses "3", "-1/2" or "0.125" exactly; bad input is a ConfigError.
inline Rational parse_number(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (t.empty()) throw ConfigError("empty number");
  auto dot = t.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(t);
      q.canonicalize();
      return q;
    }
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::string den = "1" + std::string(t.size() - dot - 1, '0');
    Rational q(digits + "/" + den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a number: " + text);
  }
}

inline Real pi_real() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

/// A numeric evaluation point. The angle is either pi/4, pi/3, pi/2, a
/// Pythagorean parameter t (exact), or a decimal angle in radians.
struct NumericPoint {
  std::string alpha_tag = "pi/4";
  std::optional<Rational> t;
  Rational a_re = 0, a_im = 0, rho = 1, b = 1;

  std::optional<SpecialAngle> special() const {
    if (alpha_tag == "pi/4") return SpecialAngle::Pi4;
    if (alpha_tag == "pi/3") return SpecialAngle::Pi3;
    return std::nullopt;
  }

  /// (sin, cos) at working precision.
  std::pair<Real, Real> sin_cos() const {
    if (t) {
      Real tt = to_real(*t), d = 1 + tt * tt;
      return {2 * tt / d, (1 - tt * tt) / d};
    }
    const Real x = alpha();
    return {boost::multiprecision::sin(x), boost::multiprecision::cos(x)};
  }

  Real alpha() const {
    if (t) return 2 * boost::multiprecision::atan(to_real(*t));
    if (alpha_tag == "pi/4") return pi_real() / 4;
    if (alpha_tag == "pi/3") return pi_real() / 3;
    if (alpha_tag == "pi/2") return pi_real() / 2;
    return to_real(parse_number(alpha_tag));
  }

  std::array<ComplexF, 6> values() const {
    auto [s, c] = sin_cos();
    ComplexF a(to_real(a_re), to_real(a_im));
    return {ComplexF(s), ComplexF(c), a, std::conj(a), ComplexF(to_real(rho)), ComplexF(to_real(b))};
  }

  /// The same point in exact arithmetic, when the angle is a t-value.
  std::optional<SamplePoint> exact() const {
    if (!t) return std::nullopt;
    return SamplePoint{*t, a_re, a_im, rho, b};
  }

  std::string str() const {
    std::string out = t ? "t=" + to_string(*t) : "alpha=" + alpha_tag;
    out += ",a=" + GaussianRational(a_re, a_im).str() + ",rho=" + to_string(rho) + ",b=" + to_string(b);
    return out;
  }
};

/// Parses "alpha=pi/4,a_re=0,a_im=0,rho=1,b=1" (keys: alpha, t, a, a_re,
/// a_im, rho, b; a takes a real value).
inline NumericPoint parse_point(const std::string& text) {
  NumericPoint p;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got " + item);
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "alpha") {
      p.alpha_tag = value;
      p.t.reset();
    } else if (key == "t") {
      p.t = parse_number(value);
      p.alpha_tag = "t";
    } else if (key == "a" || key == "a_re") {
      p.a_re = parse_number(value);
    } else if (key == "a_im") {
      p.a_im = parse_number(value);
    } else if (key == "rho") {
      p.rho = parse_number(value);
    } else if (key == "b") {
      p.b = parse_number(value);
    } else {
      throw ConfigError("unknown point key " + key);
    }
  }
  return p;
}

/// Grid file: one `alpha_tag,a_re,a_im,rho,b` row per line; '#' comments.
/// alpha_tag is pi/4, pi/3 or a rational t-value.
inline std::vector<NumericPoint> parse_grid(const std::string& text) {
  std::vector<NumericPoint> out;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> f;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) f.push_back(cell);
    if (f.size() != 5) throw ConfigError("grid line " + std::to_string(lineno) + ": expected 5 fields");
    for (auto& x : f) x.erase(std::remove_if(x.begin(), x.end(), ::isspace), x.end());
    NumericPoint p;
    if (f[0] == "pi/4" || f[0] == "pi/3") {
      p.alpha_tag = f[0];
    } else {
      p.t = parse_number(f[0]);
      p.alpha_tag = "t";
    }
    p.a_re = parse_number(f[1]);
    p.a_im = parse_number(f[2]);
    p.rho = parse_number(f[3]);
    p.b = parse_number(f[4]);
    out.push_back(p);
  }
  return out;
}

/// The default scan grid: (pi/4, 0, 0) over rho in {-2,-1,1/2,1,2}, b in {1/2,1,2}.
inline std::vector<NumericPoint> default_grid() {
  std::vector<NumericPoint> out;
  for (const char* rho : {"-2", "-1", "1/2", "1", "2"})
    for (const char* b : {"1/2", "1", "2"}) {
      NumericPoint p;
      p.rho = parse_number(rho);
      p.b = parse_number(b);
      out.push_back(p);
    }
  return out;
}

inline ComplexF eval_complex(const Formula& f, const NumericPoint& pt) {
  Evaluator<ComplexF, ComplexTraits> ev(pt.values());
  return checked(ev.eval(f));
}

inline ComplexF eval_complex(const TrigRational& e, const NumericPoint& pt) {
  auto [num, den] = e.evaluate_parts<ComplexF>(pt.values(), ComplexTraits::from);
  return checked(num * ComplexTraits::inverse(den));
}

struct CubicRoots {
  std::array<ComplexF, 3> roots;
  std::array<Real, 3> residuals;
};

inline ComplexF horner(const std::array<ComplexF, 4>& c, const ComplexF& x) {
  return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

/// Roots of c3 x^3 + c2 x^2 + c1 x + c0 from the companion matrix, then one
/// Newton step each. Sorted by real part, then imaginary part.
inline CubicRoots solve_cubic(const ComplexF& c3, const ComplexF& c2, const ComplexF& c1, const ComplexF& c0) {
  const auto& cfg = numeric_config();
  Real scale = std::max({magnitude(c3), magnitude(c2), magnitude(c1), magnitude(c0)});
  if (scale == 0 || magnitude(c3) <= cfg.scaled(cfg.tol_lead) * scale) throw DegenerateLeadingCoefficient();
  using M = Eigen::Matrix<ComplexF, 3, 3>;
  M m = M::Zero();
  m(1, 0) = ComplexF(1);
  m(2, 1) = ComplexF(1);
  m(0, 2) = -c0 / c3;
  m(1, 2) = -c1 / c3;
  m(2, 2) = -c2 / c3;
  Eigen::ComplexEigenSolver<M> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericError("companion eigenvalues did not converge");
  const std::array<ComplexF, 4> c = {c3, c2, c1, c0};
  CubicRoots out;
  for (int k = 0; k < 3; ++k) {
    ComplexF x = solver.eigenvalues()[k];
    ComplexF dp = (Real(3) * c3 * x + Real(2) * c2) * x + c1;
    if (magnitude(dp) > 0) {
      ComplexF step = horner(c, x) / dp;
      if (is_finite(step)) x -= step;
    }
    out.roots[k] = checked(x);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const ComplexF& u, const ComplexF& v) {
    return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
  });
  for (int k = 0; k < 3; ++k) out.residuals[k] = magnitude(horner(c, out.roots[k]));
  return out;
}

/// Relative imaginary part; zero for zero.
inline Real relative_imag(const ComplexF& z) {
  Real m = magnitude(z);
  return m == 0 ? Real(0) : boost::multiprecision::abs(z.imag()) / m;
}

struct CubicAt {
  std::array<ComplexF, 4> coeffs;  // c3, c2, c1, c0
  bool real_coefficients = false;
};

inline CubicAt cubic_at(const NumericPoint& pt, const CubicCoeffs& cc) {
  Evaluator<ComplexF, ComplexTraits> ev(pt.values());
  CubicAt out{{checked(ev.eval(cc.c3)), checked(ev.eval(cc.c2)), checked(ev.eval(cc.c1)), checked(ev.eval(cc.c0))}};
  const auto& cfg = numeric_config();
  out.real_coefficients = std::all_of(out.coeffs.begin(), out.coeffs.end(), [&](const ComplexF& z) {
    return relative_imag(z) < cfg.scaled(cfg.tol_real);
  });
  return out;
}

/// A root standing for p23 and the value used for its conjugate.
struct P23Candidate {
  ComplexF P, Pbar;
  Real imag;
  Real residual;
};

/// Non-real roots of the cubic at real-coefficient points (one conjugate
/// pair, each paired with the other); all roots otherwise, with Pbar the
/// complex conjugate.
inline std::vector<P23Candidate> p23_candidates(const NumericPoint& pt, const CubicCoeffs& cc = cubic_coeffs()) {
  const auto cubic = cubic_at(pt, cc);
  const auto roots = solve_cubic(cubic.coeffs[0], cubic.coeffs[1], cubic.coeffs[2], cubic.coeffs[3]);
  const auto& cfg = numeric_config();
  std::vector<P23Candidate> out;
  for (int k = 0; k < 3; ++k) {
    const ComplexF& r = roots.roots[k];
    Real im = boost::multiprecision::abs(r.imag());
    if (cubic.real_coefficients && im <= cfg.scaled(cfg.tol_conj) * std::max(Real(1), magnitude(r))) continue;
    out.push_back({r, std::conj(r), im, roots.residuals[k]});
  }
  if (out.empty()) throw AllRootsReal();
  if (cubic.real_coefficients) {
    for (auto& cand : out) {
      auto partner = std::min_element(out.begin(), out.end(), [&](const P23Candidate& u, const P23Candidate& v) {
        return magnitude(u.P - std::conj(cand.P)) < magnitude(v.P - std::conj(cand.P));
      });
      cand.Pbar = partner->P;
    }
  }
  return out;
}

struct GValue {
  P23Candidate candidate;
  ComplexF denominator;
  std::optional<ComplexF> G;  // empty when the denominator vanishes
  std::string error;
};

/// G at each p23 candidate, with dp23 = -p24 etc. expressed through the
/// shared denominator 3 p16 P^2 + 2 p20 P + p21.
inline std::vector<GValue> G_at(const NumericPoint& pt, const GTemplate& g = G_template(),
                                const CubicCoeffs& cc = cubic_coeffs()) {
  const auto& cfg = numeric_config();
  std::vector<GValue> out;
  Evaluator<ComplexF, ComplexTraits> ev(pt.values());
  auto eval_coeff = [&](const Formula& f) { return ev.eval(f); };
  for (const auto& cand : p23_candidates(pt, cc)) {
    std::array<ComplexF, 10> syms{};
    syms[static_cast<int>(Sym::P)] = cand.P;
    syms[static_cast<int>(Sym::Pbar)] = cand.Pbar;
    GValue v{cand, checked(g.denominator.evaluate(syms, eval_coeff)), std::nullopt, ""};
    if (magnitude(v.denominator) < cfg.scaled(cfg.tol_den)) {
      v.error = DerivativeDenominatorZero().what();
    } else {
      v.G = checked(g.numerator.evaluate(syms, eval_coeff) / v.denominator);
    }
    out.push_back(v);
  }
  return out;
}

enum class ScanTarget { F, p16, G };

inline const char* scan_target_name(ScanTarget t) {
  switch (t) {
    case ScanTarget::F: return "F";
    case ScanTarget::p16: return "p16";
    case ScanTarget::G: return "G";
  }
  return "?";
}

struct ScanRow {
  NumericPoint point;
  ScanTarget target;
  bool exact = false;     // value computed in exact arithmetic
  bool nonzero = false;
  std::string value;      // rendered value(s)
  std::string margin;     // smallest modulus seen
  std::string note;       // poles, degenerate roots
};

namespace detail {

inline std::string render_quad(const QuadExt<GaussianRational>& v) {
  std::string out = v.rational_part().str();
  if (!v.radical_part().is_zero())
    out += " + (" + v.radical_part().str() + ")*sqrt(" + std::to_string(v.radicand()) + ")";
  return out;
}

inline ComplexF quad_to_complex(const QuadExt<GaussianRational>& v) {
  ComplexF r = to_complex(v.rational_part());
  if (!v.radical_part().is_zero()) r += to_complex(v.radical_part()) * boost::multiprecision::sqrt(Real(v.radicand()));
  return r;
}

}  // namespace detail

/// Value of F or p16 exactly when the point allows it (special angle with real
/// a, or a t-value), numerically otherwise.
inline ScanRow scan_scalar(const Formula& f, ScanTarget target, const NumericPoint& pt) {
  ScanRow row{pt, target};
  try {
    if (auto ang = pt.special(); ang && pt.a_im == 0) {
      auto v = specialize<GaussianRational>(f.materialize(), *ang, GaussianRational(pt.a_re), GaussianRational(pt.rho),
                                            GaussianRational(pt.b));
      row.exact = true;
      row.nonzero = !v.is_zero();
      row.value = detail::render_quad(v);
      row.margin = format_real(magnitude(detail::quad_to_complex(v)));
      return row;
    }
    if (auto ex = pt.exact()) {
      GaussianRational v = f.materialize().evaluate(ex->values());
      row.exact = true;
      row.nonzero = !v.is_zero();
      row.value = v.str();
      row.margin = format_real(magnitude(to_complex(v)));
      return row;
    }
    ComplexF v = eval_complex(f, pt);
    row.value = format_complex(v);
    row.margin = format_real(magnitude(v));
    row.nonzero = magnitude(v) > numeric_config().scaled(numeric_config().tol_den);
  } catch (const PoleAtPoint& e) {
    row.note = "pole";
  } catch (const PoleNearPoint& e) {
    row.note = e.what();
  }
  return row;
}

/// Non-vanishing rows for F, p16 or G over a grid. A G row is nonzero when
/// |G| exceeds `g_margin` at every p23 candidate.
inline std::vector<ScanRow> nonvanishing_scan(ScanTarget target, const std::vector<NumericPoint>& grid,
                                              double g_margin = 1e-8) {
  std::vector<ScanRow> rows;
  for (const auto& pt : grid) {
    if (target == ScanTarget::F) {
      rows.push_back(scan_scalar(F_expr(), target, pt));
      continue;
    }
    if (target == ScanTarget::p16) {
      rows.push_back(scan_scalar(Catalog::instance().p("p16"), target, pt));
      continue;
    }
    ScanRow row{pt, target};
    try {
      auto values = G_at(pt);
      row.nonzero = true;
      std::optional<Real> smallest;
      for (const auto& v : values) {
        if (!row.value.empty()) row.value += "; ";
        row.value += "P=" + format_complex(v.candidate.P, 12) + ": ";
        if (!v.G) {
          row.nonzero = false;
          row.value += "denominator vanishes";
          continue;
        }
        row.value += "G=" + format_complex(*v.G, 12);
        Real m = magnitude(*v.G);
        if (!smallest || m < *smallest) smallest = m;
        if (m <= Real(g_margin)) row.nonzero = false;
      }
      if (smallest) row.margin = format_real(*smallest);
    } catch (const Error& e) {
      row.note = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

struct OdeTrajectory {
  std::vector<std::pair<Real, ComplexF>> samples;
  Real step;
  std::string method = "rk4";
};

/// a'(alpha) = p2(alpha, a, conj a) by classical RK4 from alpha0 to alpha1
/// with steps of at most |step|; the last step lands on alpha1.
inline OdeTrajectory ode_integrate(const Real& alpha0, const ComplexF& a0, const Real& alpha1, const Real& step,
                                   const Rational& rho, const Rational& b) {
  if (step <= 0) throw ConfigError("step must be positive");
  const TrigRational p2 = Catalog::instance().p("p2").materialize();
  const ComplexF rho_v(to_real(rho)), b_v(to_real(b));
  auto field = [&](const Real& alpha, const ComplexF& a) {
    std::array<ComplexF, 6> v = {ComplexF(boost::multiprecision::sin(alpha)), ComplexF(boost::multiprecision::cos(alpha)),
                                 a, std::conj(a), rho_v, b_v};
    auto [num, den] = p2.evaluate_parts<ComplexF>(v, ComplexTraits::from);
    return checked(num * ComplexTraits::inverse(den));
  };
  const Real span = alpha1 - alpha0;
  const long n = std::max(1L, static_cast<long>(boost::multiprecision::ceil(boost::multiprecision::abs(span) / step)));
  const Real h = span / n;
  OdeTrajectory out;
  out.step = h;
  Real alpha = alpha0;
  ComplexF a = a0;
  out.samples.emplace_back(alpha, a);
  for (long k = 0; k < n; ++k) {
    try {
      ComplexF k1 = field(alpha, a);
      ComplexF k2 = field(alpha + h / 2, a + k1 * (h / 2));
      ComplexF k3 = field(alpha + h / 2, a + k2 * (h / 2));
      ComplexF k4 = field(alpha + h, a + k3 * h);
      a += (k1 + Real(2) * k2 + Real(2) * k3 + k4) * (h / 6);
    } catch (const PoleNearPoint& e) {
      throw PoleEncountered(alpha.convert_to<double>(), e.what());
    } catch (const NumericError& e) {
      throw PoleEncountered(alpha.convert_to<double>(), e.what());
    }
    alpha = k + 1 == n ? alpha1 : alpha0 + h * (k + 1);
    out.samples.emplace_back(alpha, a);
  }
  return out;
}

/// Empirical orders log2(e(h)/e(h/2)) over three halvings, errors taken at
/// alpha1 against a run with step h/64.
inline std::vector<double> rk4_orders(const Real& alpha0, const ComplexF& a0, const Real& alpha1, const Real& h,
                                      const Rational& rho, const Rational& b) {
  const ComplexF ref = ode_integrate(alpha0, a0, alpha1, h / 64, rho, b).samples.back().second;
  std::vector<Real> errors;
  for (int k = 0; k < 4; ++k) {
    Real hk = h / (1 << k);
    errors.push_back(magnitude(ode_integrate(alpha0, a0, alpha1, hk, rho, b).samples.back().second - ref));
  }
  std::vector<double> orders;
  for (int k = 0; k + 1 < 4; ++k)
    orders.push_back(boost::multiprecision::log2(errors[k] / errors[k + 1]).convert_to<double>());
  return orders;
}

}  // namespace pmc
