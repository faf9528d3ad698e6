// pmc-verify: runs the check suites and exposes the kernel from the shell.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "pmc/expr/render.hpp"
#include "pmc/verify/suite.hpp"

namespace {

using namespace pmc;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

DiffVar parse_wrt(const std::string& v) {
  if (v == "alpha") return DiffVar::alpha;
  if (v == "a") return DiffVar::a;
  if (v == "abar") return DiffVar::abar;
  throw ConfigError("--wrt must be alpha, a or abar");
}

Mode parse_mode(const std::string& m) {
  if (m == "symbolic") return Mode::Symbolic;
  if (m == "sampled") return Mode::Sampled;
  throw ConfigError("--mode must be symbolic or sampled");
}

int cmd_verify(RunConfig cfg, const std::string& mode, const std::string& json_path, const std::string& format) {
  cfg.mode = parse_mode(mode);
  if (format != "text" && format != "json") throw ConfigError("--format must be text or json");
  set_precision_bits(cfg.precision_bits);
  const Report report = run_suite(cfg);
  emit_report(report, format == "json" ? ReportFormat::Json : ReportFormat::Text, "-", std::cout);
  if (!json_path.empty()) emit_report(report, ReportFormat::Json, json_path, std::cout);
  return exit_code(report);
}

void print_value(const TrigRational& e, const std::string& at) {
  if (at.empty()) {
    std::cout << expr::render(e) << "\n";
    return;
  }
  const NumericPoint pt = parse_point(at);
  std::cout << "point: " << pt.str() << "\n";
  if (auto sp = pt.exact()) {
    std::cout << "exact: " << e.evaluate(sp->values()).str() << "\n";
  } else if (auto ang = pt.special(); ang && pt.a_im == 0) {
    const auto v = specialize<GaussianRational>(e, *ang, GaussianRational(pt.a_re), GaussianRational(pt.rho),
                                                GaussianRational(pt.b));
    std::cout << "exact: " << detail::render_quad(v) << "\n";
  }
  std::cout << "numeric: " << format_complex(eval_complex(e, pt), 30) << "\n";
}

int cmd_pshow(const std::string& id) {
  const auto& cat = Catalog::instance();
  const PEntry& e = cat.entry(id);
  std::cout << id << " [" << e.anchor << "]\n" << expr::render(e.expr.materialize()) << "\n";
  return 0;
}

int cmd_roots(const std::string& at) {
  const NumericPoint pt = parse_point(at);
  const auto cubic = cubic_at(pt, cubic_coeffs());
  const char* names[] = {"p16", "p20", "p21", "p22"};
  std::cout << "point: " << pt.str() << "\n";
  for (int k = 0; k < 4; ++k) std::cout << names[k] << " = " << format_complex(cubic.coeffs[k], 30) << "\n";
  const auto roots = solve_cubic(cubic.coeffs[0], cubic.coeffs[1], cubic.coeffs[2], cubic.coeffs[3]);
  for (int k = 0; k < 3; ++k)
    std::cout << "root " << k << ": " << format_complex(roots.roots[k], 30)
              << "  residual " << format_real(roots.residuals[k], 6) << "\n";
  try {
    for (const auto& g : G_at(pt)) {
      std::cout << "p23 = " << format_complex(g.candidate.P, 30) << "\n  denominator = "
                << format_complex(g.denominator, 20) << "\n  G = "
                << (g.G ? format_complex(*g.G, 20) : "undefined (" + g.error + ")") << "\n";
    }
  } catch (const AllRootsReal& e) {
    std::cout << e.what() << "\n";
  }
  return 0;
}

int cmd_ode(const std::string& at, const std::string& to, const std::string& step) {
  const NumericPoint pt = parse_point(at);
  const auto tr = ode_integrate(pt.alpha(), ComplexF(to_real(pt.a_re), to_real(pt.a_im)), to_real(parse_number(to)),
                                to_real(parse_number(step)), pt.rho, pt.b);
  std::cout << "# alpha  re(a)  im(a)   method=" << tr.method << " step=" << format_real(tr.step, 12) << "\n";
  for (const auto& [alpha, a] : tr.samples)
    std::cout << format_real(alpha, 20) << " " << format_real(a.real(), 25) << " " << format_real(a.imag(), 25) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact replay and numeric checks for the p-catalog"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pmc::kEngineVersion));

  pmc::RunConfig cfg;
  std::string mode = "symbolic", json_path, format = "text";
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "run a check suite");
  verify->add_option("--suite", cfg.suite, "static, jet, numeric or all")->capture_default_str();
  verify->add_option("--mode", mode, "symbolic or sampled")->capture_default_str();
  verify->add_option("--samples", cfg.samples, "sample points per zero test")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "first sample seed")->capture_default_str();
  verify->add_option("--json", json_path, "also write the JSON report here ('-' for stdout)");
  verify->add_option("--budget", cfg.budget, "term budget for symbolic reduction")->capture_default_str();
  verify->add_option("--precision", cfg.precision_bits, "numeric precision in bits")->capture_default_str();
  verify->add_option("--fallback-samples", cfg.fallback_samples, "points used after a symbolic overflow")
      ->capture_default_str();
  verify->add_option("--grid", cfg.grid_path, "grid file: alpha a_re a_im rho b per line");
  verify->add_option("--format", format, "text or json on stdout")->capture_default_str();
  verify->add_flag("--no-timing", no_timing, "report time_ms as 0");

  std::string text, at, wrt, id, to, step = "0.01";
  auto* eval = app.add_subcommand("eval", "parse, normalize and optionally evaluate an expression");
  eval->add_option("EXPR", text)->required();
  eval->add_option("--at", at, "alpha=pi/4|t=..,a=..,a_im=..,rho=..,b=..");

  auto* diff = app.add_subcommand("diff", "partial derivative of an expression");
  diff->add_option("EXPR", text)->required();
  diff->add_option("--wrt", wrt, "alpha, a or abar")->required();

  auto* pshow = app.add_subcommand("pshow", "print a catalog entry");
  pshow->add_option("ID", id)->required();

  auto* roots = app.add_subcommand("roots", "cubic coefficients, roots, p23 candidates and G at a point");
  roots->add_option("--at", at)->required();

  auto* ode = app.add_subcommand("ode", "integrate a' = p2 with RK4");
  ode->add_option("--at", at, "start point; alpha and a are the initial condition")->required();
  ode->add_option("--to", to, "final alpha")->required();
  ode->add_option("--step", step)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) {
      cfg.timing = !no_timing;
      return cmd_verify(cfg, mode, json_path, format);
    }
    if (*eval) {
      print_value(pmc::expr::parse_value(text), at);
      return 0;
    }
    if (*diff) {
      std::cout << pmc::expr::render(pmc::expr::parse_value(text).differentiate(parse_wrt(wrt))) << "\n";
      return 0;
    }
    if (*pshow) return cmd_pshow(id);
    if (*roots) return cmd_roots(at);
    if (*ode) return cmd_ode(at, to, step);
  } catch (const pmc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pmc::expr::SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const pmc::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pmc::UnknownId& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const pmc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
