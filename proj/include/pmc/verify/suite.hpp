#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "pmc/jet/testers.hpp"
#include "pmc/numeric/lab.hpp"
#include "pmc/verify/report.hpp"

namespace pmc {

enum class Suite { Static, Jet, Numeric };

inline const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Static: return "static";
    case Suite::Jet: return "jet";
    case Suite::Numeric: return "numeric";
  }
  return "?";
}

struct RegisteredCheck {
  std::string id;
  std::string anchor;
  Suite suite;
  std::function<CheckResult(const RunConfig&)> run;
};

namespace detail {

inline CheckResult make_result(const std::string& id, const std::string& anchor, Mode mode) {
  CheckResult r;
  r.check_id = id;
  r.paper_anchor = anchor;
  r.mode = mode;
  return r;
}

inline void fill_from(CheckResult& r, const ZeroTester& z) {
  r.residual_terms = z.residual_terms;
  r.witness = z.witness;
  r.notes.insert(r.notes.end(), z.notes.begin(), z.notes.end());
}

/// Runs a replay check in the configured mode. Symbolic runs that exceed the
/// term budget are repeated at `fallback_samples` exact points and flagged.
inline CheckResult run_replay(const ReplayCheck& c, const RunConfig& cfg) {
  if (cfg.mode == Mode::Sampled) {
    CheckResult r = make_result(c.id, c.anchor, Mode::Sampled);
    SampledTester z(cfg.samples, cfg.seed);
    bool ok = c.run(z);
    fill_from(r, z);
    r.status = ok ? Status::ProbablyPass : Status::Fail;
    return r;
  }
  CheckResult r = make_result(c.id, c.anchor, Mode::Symbolic);
  try {
    SymbolicTester z(cfg.budget);
    bool ok = c.run(z);
    fill_from(r, z);
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
  } catch (const ReductionOverflow& e) {
    r = make_result(c.id, c.anchor, Mode::Sampled);
    SampledTester z(cfg.fallback_samples, cfg.seed);
    bool ok = c.run(z);
    fill_from(r, z);
    r.notes.insert(r.notes.begin(), std::string("symbolic reduction overflowed (") + e.what() + "); sampled at " +
                                        std::to_string(cfg.fallback_samples) + " exact points");
    r.status = ok ? Status::Overflowed : Status::Fail;
    return r;
  }
}

/// Denominators of p7 and p8 add exactly the Ricci factor s^2 - 2/3 to those
/// they inherit from p4 and p6.
inline CheckResult welldef_p7_p8(const RunConfig& cfg) {
  const auto& cat = Catalog::instance();
  CheckResult r = make_result("welldef-p7-p8", "p7, p8 well-defined for rho != 0 and d alpha != 0", Mode::Symbolic);
  try {
    budget::Scope scope(cfg.budget);
    std::vector<Polynomial> inherited;
    for (const char* id : {"p4", "p6"}) {
      const TrigRational e = cat.p(id).materialize();
      for (const auto& f : e.factors()) inherited.push_back(f.atom);
    }
    auto known = [&](const Polynomial& x) { return std::find(inherited.begin(), inherited.end(), x) != inherited.end(); };
    const Polynomial ricci = Polynomial::var(Var::s) * Polynomial::var(Var::s) - Polynomial(Rational(2, 3));
    bool ok = true;
    for (const char* id : {"p7", "p8"}) {
      const TrigRational e = cat.p(id).materialize();
      std::string fresh;
      bool has_ricci = false;
      for (const auto& f : e.factors()) {
        if (f.atom == ricci && f.power == 1) {
          has_ricci = true;
          continue;
        }
        if (!known(f.atom)) fresh += " (" + f.atom.str() + ")^" + std::to_string(f.power);
      }
      r.notes.push_back(std::string(id) + " denominator atoms: " + std::to_string(e.factors().size()) +
                        (has_ricci ? ", Ricci factor s^2 - 2/3 to the first power" : ", no Ricci factor"));
      if (!has_ricci || !fresh.empty()) {
        ok = false;
        if (r.witness.empty()) r.witness = std::string(id) + ": unexpected denominator" + fresh;
      }
    }
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok && r.witness.empty()) r.witness = "Ricci factor missing";
  } catch (const ReductionOverflow& e) {
    r.status = Status::Overflowed;
    r.witness = e.what();
    r.notes.push_back("structural check: no sampled fallback");
  }
  return r;
}

/// p17 = p17a - p17b reduced two ways: halves first, or with the paired terms
/// (the |q|^2, p7 q_a, p7 p11 q and N dp11/dabar terms) combined first.
inline CheckResult p17_order_diag(const RunConfig& cfg) {
  const auto& cat = Catalog::instance();
  CheckResult r = make_result("p17-order-diag", "p17 = p17a - p17b, order of simplification", Mode::Symbolic);
  try {
    budget::Scope scope(cfg.budget);
    const Formula &p1 = cat.p("p1"), &p2 = cat.p("p2"), &p7 = cat.p("p7"), &p8 = cat.p("p8"), &p11 = cat.p("p11"),
                  &p12 = cat.p("p12"), &p13 = cat.p("p13"), &p14 = cat.p("p14"), &p15 = cat.p("p15");
    const Formula q = p2.diff(DiffVar::abar), q2 = q.diff(DiffVar::a), N = p7 * p7.conj() + p8;
    const Formula quarter(GaussianRational(Rational(1, 4))), half(GaussianRational(Rational(1, 2)));
    const Formula paired = quarter * q * q.conj() + half * p7 * q2 - p7 * p11 * q - N * p11.diff(DiffVar::abar);
    const Formula rest_a = Formula(2) * p11 * p15 + p12 * p14 - p2 * p12.diff(DiffVar::a) +
                           p2.conj() * p12.diff(DiffVar::abar) - p7 * p12.diff(DiffVar::abar) + p13.diff(DiffVar::a);
    const Formula rest_b = p1 * p14 + Formula(2) * p11 * p13 + p12 * p14 + p7 * p14.diff(DiffVar::abar) +
                           p14.diff(DiffVar::alpha) + p15.diff(DiffVar::a);
    const TrigRational a = cat.p("p17a").materialize(), b = cat.p("p17b").materialize();
    const TrigRational halves_first = normalize(a - b);
    const TrigRational pm = paired.materialize(), ra = rest_a.materialize(), rb = rest_b.materialize();
    const TrigRational paired_first = normalize(pm + pm + ra - rb);
    r.notes.push_back("halves first: |p17a| = " + std::to_string(a.term_count()) + ", |p17b| = " +
                      std::to_string(b.term_count()) + ", |p17| = " + std::to_string(halves_first.term_count()));
    r.notes.push_back("paired first: |paired| = " + std::to_string(pm.term_count()) + ", |rest a| = " +
                      std::to_string(ra.term_count()) + ", |rest b| = " + std::to_string(rb.term_count()));
    r.notes.push_back(std::string("paired terms ") + (pm.is_zero() ? "vanish" : "do not cancel; they enter p17 twice"));
    const bool same = equals(halves_first, paired_first);
    r.notes.push_back(std::string("both orders agree: ") + (same ? "yes" : "no"));
    const bool split_ok = equals(a, normalize(pm + ra)) && equals(b, normalize(rb - pm));
    r.status = same && split_ok ? Status::Pass : Status::Fail;
    if (r.status == Status::Fail) r.witness = split_ok ? "orders disagree" : "split of p17a/p17b does not reassemble";
  } catch (const ReductionOverflow& e) {
    r.status = Status::Overflowed;
    r.witness = e.what();
    r.notes.push_back("structural check: no sampled fallback");
  }
  return r;
}

/// F - conj(F) at 20 sample points; records the values and asserts nothing.
inline CheckResult f_conj_diag(const RunConfig& cfg) {
  CheckResult r = make_result("f-conj-diag", "F is not claimed real: F - conj(F) recorded", Mode::Sampled);
  const Formula d = F_expr() - F_expr().conj();
  std::size_t nonzero = 0, k = 0;
  for (std::uint64_t seed = cfg.seed; k < 20; ++seed) {
    Evaluator<GaussianRational> ev(sample_point(seed).values());
    try {
      GaussianRational v = ev.eval(d);
      ++k;
      if (!v.is_zero()) ++nonzero;
      r.notes.push_back(sample_point(seed).str() + ": " + format_complex(to_complex(v), 12));
    } catch (const PoleAtPoint&) {
    }
  }
  r.witness = std::to_string(nonzero) + " of 20 points with F != conj(F)";
  r.status = Status::Pass;
  return r;
}

inline std::vector<NumericPoint> load_grid(const RunConfig& cfg) {
  if (cfg.grid_path.empty()) return default_grid();
  std::ifstream in(cfg.grid_path);
  if (!in) throw ConfigError("cannot read grid file " + cfg.grid_path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_grid(text.str());
}

inline std::string at(const NumericPoint& p) { return "@" + p.str(); }

/// F(pi/4, 0, 0) as a rational function of (rho, b), and at rho = b = 1.
inline CheckResult f_pi4(const RunConfig&) {
  CheckResult r = make_result("f-pi4", "F(pi/4, 0, 0) = 15 rho / (8 b)", Mode::Symbolic);
  const TrigRational rho = TrigRational::var(Var::rho), b = TrigRational::var(Var::b);
  const auto v = specialize<TrigRational>(F_expr().materialize(), SpecialAngle::Pi4, TrigRational(0), rho, b);
  const TrigRational expected = TrigRational(GaussianRational(Rational(15, 8))) * rho / b;
  const bool exact_ok = v.radical_part().is_zero() && equals(v.rational_part(), expected);
  NumericPoint pt;
  const Real numeric = eval_complex(F_expr(), pt).real();
  const bool numeric_ok = boost::multiprecision::abs(numeric - Real("1.875")) < Real("1e-12");
  r.notes.push_back("numeric F(pi/4, 0, 0; rho = 1, b = 1) = " + format_real(numeric, 30));
  r.status = exact_ok && numeric_ok ? Status::Pass : Status::Fail;
  if (!exact_ok) r.witness = "exact value differs from 15 rho/(8 b)";
  else if (!numeric_ok) r.witness = "numeric value " + format_real(numeric);
  return r;
}

inline CheckResult scan_row_result(const std::string& id, const std::string& anchor, const ScanRow& row) {
  CheckResult r = make_result(id, anchor, row.exact ? Mode::Symbolic : Mode::Numeric);
  r.notes.push_back("value = " + row.value);
  if (!row.margin.empty()) r.notes.push_back("modulus = " + row.margin);
  r.status = row.nonzero ? Status::Pass : Status::Fail;
  if (!row.nonzero) r.witness = row.note.empty() ? "value vanishes at " + row.point.str() : row.note;
  return r;
}

/// Exact discriminant of the cubic at a special angle with real a.
inline std::optional<Real> exact_discriminant(const NumericPoint& pt, const CubicCoeffs& cc) {
  auto ang = pt.special();
  if (!ang || pt.a_im != 0) return std::nullopt;
  auto val = [&](const Formula& f) {
    return specialize<GaussianRational>(f.materialize(), *ang, GaussianRational(pt.a_re), GaussianRational(pt.rho),
                                        GaussianRational(pt.b));
  };
  using Q = QuadExt<GaussianRational>;
  const Q a = val(cc.c3), b = val(cc.c2), c = val(cc.c1), d = val(cc.c0);
  const Q disc = Q(18) * a * b * c * d - Q(4) * b * b * b * d + b * b * c * c - Q(4) * a * c * c * c -
                 Q(27) * a * a * d * d;
  return detail::quad_to_complex(disc).real();
}

inline CheckResult cubic_real(const NumericPoint& pt) {
  CheckResult r = make_result("cubic-real" + at(pt), "all cubic coefficients are real at (pi/4, 0, 0)", Mode::Numeric);
  const auto cubic = cubic_at(pt, cubic_coeffs());
  const char* names[] = {"p16", "p20", "p21", "p22"};
  Real worst = 0;
  for (int k = 0; k < 4; ++k) {
    worst = std::max(worst, relative_imag(cubic.coeffs[k]));
    r.notes.push_back(std::string(names[k]) + " = " + format_complex(cubic.coeffs[k]));
  }
  r.notes.push_back("max |imag|/|value| = " + format_real(worst, 6));
  r.status = cubic.real_coefficients ? Status::Pass : Status::Fail;
  if (!cubic.real_coefficients) r.witness = "relative imaginary part " + format_real(worst, 6);
  return r;
}

inline CheckResult p23_nonreal(const NumericPoint& pt) {
  CheckResult r =
      make_result("p23-nonreal" + at(pt), "p23(pi/4, 0, 0) non-zero, unique up to conjugation", Mode::Numeric);
  const auto cubic = cubic_at(pt, cubic_coeffs());
  const auto roots = solve_cubic(cubic.coeffs[0], cubic.coeffs[1], cubic.coeffs[2], cubic.coeffs[3]);
  std::string listed;
  Real worst = 0;
  for (int k = 0; k < 3; ++k) {
    listed += (k ? "; " : "") + format_complex(roots.roots[k], 15);
    worst = std::max(worst, roots.residuals[k]);
  }
  r.notes.push_back("roots: " + listed);
  r.notes.push_back("max residual = " + format_real(worst, 6));
  const auto& cfg = numeric_config();
  const bool residual_ok = worst < cfg.scaled(cfg.tol_root) * std::max(Real(1), magnitude(cubic.coeffs[0]));
  if (auto disc = exact_discriminant(pt, cubic_coeffs()))
    r.notes.push_back("exact discriminant = " + format_real(*disc, 15) +
                      (*disc > 0 ? " (three real roots)" : *disc < 0 ? " (one conjugate pair)" : " (repeated root)"));
  try {
    const auto cands = p23_candidates(pt);
    bool ok = residual_ok;
    for (const auto& c : cands)
      if (magnitude(c.P) == 0) ok = false;
    if (cubic.real_coefficients && cands.size() != 2) ok = false;
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok) r.witness = residual_ok ? "candidate set is not one non-zero conjugate pair" : "root residual too large";
  } catch (const AllRootsReal& e) {
    r.status = Status::Fail;
    r.witness = std::string(e.what()) + ": " + listed;
  }
  return r;
}

inline CheckResult deriv_den(const NumericPoint& pt) {
  CheckResult r = make_result("deriv-den" + at(pt), "3 p16 p23^2 + 2 p20 p23 + p21 non-zero", Mode::Numeric);
  try {
    const auto values = G_at(pt);
    bool ok = true;
    for (const auto& v : values) {
      r.notes.push_back("P = " + format_complex(v.candidate.P, 15) + ": denominator = " + format_complex(v.denominator, 15));
      if (!v.G) ok = false;
    }
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok) r.witness = DerivativeDenominatorZero().what();
  } catch (const AllRootsReal& e) {
    r.status = Status::Skipped;
    r.notes.push_back(std::string("no non-real p23 candidate: ") + e.what());
  }
  return r;
}

inline CheckResult g_nonvanishing(const NumericPoint& pt) {
  CheckResult r = make_result("g-nonvanishing" + at(pt), "G(pi/4, 0, 0) != 0 for each p23 candidate", Mode::Numeric);
  try {
    const auto values = G_at(pt);
    bool ok = true;
    std::vector<ComplexF> gs;
    for (const auto& v : values) {
      if (!v.G) {
        ok = false;
        r.witness = "P = " + format_complex(v.candidate.P, 15) + ": " + v.error;
        continue;
      }
      gs.push_back(*v.G);
      r.notes.push_back("P = " + format_complex(v.candidate.P, 15) + ": G = " + format_complex(*v.G, 15) +
                        " (computed)");
      if (magnitude(*v.G) <= Real("1e-8")) {
        ok = false;
        r.witness = "|G| <= 1e-8 at P = " + format_complex(v.candidate.P, 15);
      }
    }
    if (gs.size() == 2) {
      const Real gap = magnitude(gs[0] - std::conj(gs[1]));
      r.notes.push_back("conjugate candidates give conjugate G: |G1 - conj G2| = " + format_real(gap, 6));
    }
    r.status = ok ? Status::Pass : Status::Fail;
  } catch (const AllRootsReal& e) {
    r.status = Status::Skipped;
    r.notes.push_back(std::string("no non-real p23 candidate: ") + e.what());
  }
  return r;
}

/// p16 at pi/4 or pi/3 (a = 0) is non-zero, exactly.
inline CheckResult p16_special(const NumericPoint& base) {
  NumericPoint pi4 = base, pi3 = base;
  pi4.alpha_tag = "pi/4";
  pi3.alpha_tag = "pi/3";
  pi4.t.reset();
  pi3.t.reset();
  const std::string suffix = "@rho=" + to_string(base.rho) + ",b=" + to_string(base.b);
  CheckResult r = make_result("p16-special" + suffix, "p16(pi/4, 0, 0) != 0 or p16(pi/3, 0, 0) != 0", Mode::Symbolic);
  const Formula& p16 = Catalog::instance().p("p16");
  const ScanRow a = scan_scalar(p16, ScanTarget::p16, pi4), b = scan_scalar(p16, ScanTarget::p16, pi3);
  r.notes.push_back("p16(pi/4) = " + (a.value.empty() ? a.note : a.value));
  r.notes.push_back("p16(pi/3) = " + (b.value.empty() ? b.note : b.value));
  r.status = a.nonzero || b.nonzero ? Status::Pass : Status::Fail;
  if (r.status == Status::Fail) r.witness = "p16 vanishes at both angles";
  return r;
}

inline CheckResult ode_order(const RunConfig&) {
  CheckResult r = make_result("ode-rk4-order", "a'(alpha) = p2(alpha, a, conj a), RK4 convergence", Mode::Numeric);
  const auto orders = rk4_orders(Real("0.6"), ComplexF(Real("0.1"), Real("0.2")), Real("1.4"), Real("0.1"), 1, 1);
  bool ok = orders.size() == 3;
  for (double o : orders) {
    std::ostringstream s;
    s << std::setprecision(6) << o;
    r.notes.push_back("order " + s.str());
    if (o < 3.7 || o > 4.3) ok = false;
  }
  r.status = ok ? Status::Pass : Status::Fail;
  if (!ok) r.witness = "empirical order outside [3.7, 4.3]";
  return r;
}

inline CheckResult ode_crossing(const RunConfig&) {
  CheckResult r = make_result("ode-pi2-crossing", "integration across alpha = pi/2 with a0 = 0", Mode::Numeric);
  try {
    const auto tr = ode_integrate(Real("1.2"), ComplexF(0), Real("1.9"), Real("0.01"), 1, 1);
    r.notes.push_back("a(1.9) = " + format_complex(tr.samples.back().second, 15) + " after " +
                      std::to_string(tr.samples.size() - 1) + " steps");
    r.status = Status::Pass;
  } catch (const PoleEncountered& e) {
    r.status = Status::Fail;
    r.witness = e.what();
  }
  return r;
}

/// eval_complex against exact evaluation for every catalog entry.
inline CheckResult float_coherence(const RunConfig& cfg) {
  CheckResult r = make_result("float-coherence", "floating evaluation agrees with exact evaluation", Mode::Numeric);
  const auto& cat = Catalog::instance();
  const auto& nc = numeric_config();
  const Real tol = nc.scaled(nc.tol_coherence);
  Real worst = 0;
  std::string worst_at;
  std::size_t compared = 0;
  const std::size_t points = std::min<std::size_t>(cfg.samples, 50);
  for (const auto& id : cat.ids()) {
    const TrigRational e = cat.p(id).materialize();
    std::size_t done = 0;
    for (std::uint64_t seed = cfg.seed + 1; done < points; ++seed) {
      const SamplePoint sp = sample_point(seed);
      GaussianRational exact;
      try {
        exact = e.evaluate(sp.values());
      } catch (const PoleAtPoint&) {
        continue;
      }
      ++done;
      NumericPoint np;
      np.t = sp.t;
      np.alpha_tag = "t";
      np.a_re = sp.a_re;
      np.a_im = sp.a_im;
      np.rho = sp.rho;
      np.b = sp.b;
      const ComplexF x = to_complex(exact);
      const Real err = magnitude(eval_complex(e, np) - x) / std::max(Real(1), magnitude(x));
      ++compared;
      if (err > worst) {
        worst = err;
        worst_at = id + " at " + sp.str();
      }
    }
  }
  r.notes.push_back(std::to_string(compared) + " comparisons, worst relative error " + format_real(worst, 6));
  r.status = worst < tol ? Status::Pass : Status::Fail;
  if (r.status == Status::Fail) r.witness = worst_at;
  return r;
}

/// Roots of the cubic rebuilt with the Y coefficient obtained by replay
/// (zero) in place of the printed p18.
inline CheckResult cubic_replayed_diag(const NumericPoint& pt) {
  CheckResult r = make_result("cubic-replayed-p18-diag" + at(pt), "cubic with the replayed Y coefficient",
                              Mode::Numeric);
  const auto& cat = Catalog::instance();
  const Formula p7b = cat.p("p7").conj();
  const CubicCoeffs alt{cat.p("p16"), cat.p("p20"), cat.p("p19") - p7b * cat.p("p17"), -(p7b * cat.p("p19"))};
  const auto cubic = cubic_at(pt, alt);
  const auto roots = solve_cubic(cubic.coeffs[0], cubic.coeffs[1], cubic.coeffs[2], cubic.coeffs[3]);
  std::string listed;
  for (int k = 0; k < 3; ++k) listed += (k ? "; " : "") + format_complex(roots.roots[k], 15);
  r.notes.push_back("roots: " + listed);
  r.notes.push_back("conj(p7) = " + format_complex(eval_complex(p7b, pt), 15));
  r.status = Status::Pass;
  return r;
}

}  // namespace detail

/// Every check, in report order.
inline std::vector<RegisteredCheck> registry(const RunConfig& cfg) {
  std::vector<RegisteredCheck> out;
  for (const auto& c : static_checks())
    out.push_back({c.id, c.anchor, Suite::Static, [c](const RunConfig& k) { return detail::run_replay(c, k); }});
  out.push_back({"welldef-p7-p8", "", Suite::Static, detail::welldef_p7_p8});
  out.push_back({"p17-order-diag", "", Suite::Static, detail::p17_order_diag});
  out.push_back({"f-conj-diag", "", Suite::Static, detail::f_conj_diag});
  for (const auto& c : replay_checks())
    out.push_back({c.id, c.anchor, Suite::Jet, [c](const RunConfig& k) { return detail::run_replay(c, k); }});

  out.push_back({"f-pi4", "", Suite::Numeric, detail::f_pi4});
  const auto grid = detail::load_grid(cfg);
  for (const auto& pt : grid)
    out.push_back({"f-nonvanishing" + detail::at(pt), "", Suite::Numeric, [pt](const RunConfig&) {
                     return detail::scan_row_result("f-nonvanishing" + detail::at(pt), "F(pi/4, 0, 0) != 0",
                                                    scan_scalar(F_expr(), ScanTarget::F, pt));
                   }});
  std::set<std::pair<Rational, Rational>> rho_b;
  for (const auto& pt : grid)
    if (rho_b.insert({pt.rho, pt.b}).second)
      out.push_back({"p16-special", "", Suite::Numeric, [pt](const RunConfig&) { return detail::p16_special(pt); }});
  for (const auto& pt : grid) {
    out.push_back({"cubic-real", "", Suite::Numeric, [pt](const RunConfig&) { return detail::cubic_real(pt); }});
    out.push_back({"p23-nonreal", "", Suite::Numeric, [pt](const RunConfig&) { return detail::p23_nonreal(pt); }});
    out.push_back({"deriv-den", "", Suite::Numeric, [pt](const RunConfig&) { return detail::deriv_den(pt); }});
    out.push_back({"g-nonvanishing", "", Suite::Numeric, [pt](const RunConfig&) { return detail::g_nonvanishing(pt); }});
  }
  NumericPoint unit;
  out.push_back({"cubic-replayed-p18-diag", "", Suite::Numeric,
                 [unit](const RunConfig&) { return detail::cubic_replayed_diag(unit); }});
  out.push_back({"ode-rk4-order", "", Suite::Numeric, detail::ode_order});
  out.push_back({"ode-pi2-crossing", "", Suite::Numeric, detail::ode_crossing});
  out.push_back({"float-coherence", "", Suite::Numeric, detail::float_coherence});
  return out;
}

inline bool suite_selected(const std::string& suite, Suite s) {
  if (suite == "all") return true;
  if (suite == "static" || suite == "jet" || suite == "numeric") return suite == suite_name(s);
  throw ConfigError("unknown suite " + suite + " (static, jet, numeric, all)");
}

/// Worker count: PMC_VERIFY_THREADS if set, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("PMC_VERIFY_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 1024) throw ConfigError("PMC_VERIFY_THREADS must be 1..1024");
    return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs one check, timing it and turning escaped errors into a Fail.
inline CheckResult run_check(const RegisteredCheck& c, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.run(cfg);
  } catch (const std::exception& e) {
    r = detail::make_result(c.id, c.anchor, c.suite == Suite::Numeric ? Mode::Numeric : cfg.mode);
    r.status = Status::Fail;
    r.witness = std::string("error: ") + e.what();
  }
  if (r.status == Status::Fail && r.witness.empty()) r.witness = "residual does not vanish";
  const auto t1 = std::chrono::steady_clock::now();
  r.time_ms = cfg.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() : 0;
  return r;
}

/// Runs every check of the suite on a worker pool; results keep registry order.
inline Report run_suite(const RunConfig& cfg, unsigned threads = 0) {
  if (cfg.samples == 0) throw ConfigError("samples must be positive");
  if (cfg.budget == 0) throw ConfigError("budget must be positive");
  std::vector<RegisteredCheck> selected;
  for (auto& c : registry(cfg))
    if (suite_selected(cfg.suite, c.suite)) selected.push_back(std::move(c));
  (void)Catalog::instance();
  Report report{kEngineVersion, cfg, std::vector<CheckResult>(selected.size())};
  if (threads == 0) threads = worker_count();
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, selected.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < selected.size();) report.results[k] = run_check(selected[k], cfg);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

/// 0 all pass, 1 any Fail, 3 an overflow that had no sampled fallback.
inline int exit_code(const Report& r) {
  bool overflow_without_fallback = false;
  for (const auto& x : r.results) {
    if (x.status == Status::Fail) return 1;
    if (x.status == Status::Overflowed && x.mode == Mode::Symbolic) overflow_without_fallback = true;
  }
  return overflow_without_fallback ? 3 : 0;
}

}  // namespace pmc
