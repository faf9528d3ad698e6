// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pmc/verify/suite.hpp"
#include "properties.hpp"

using namespace pmc;

namespace {

struct Line {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) detail = why;
    ok = ok && cond;
  }
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::string brief(const CheckResult& r) {
  std::string out = r.check_id + " " + status_name(r.status);
  if (!r.witness.empty()) out += " (" + r.witness + ")";
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Report run(const std::string& suite, double* secs) {
  RunConfig cfg;
  cfg.suite = suite;
  cfg.fallback_samples = 200;
  cfg.timing = false;
  const auto t0 = std::chrono::steady_clock::now();
  Report r = run_suite(cfg);
  *secs = seconds_since(t0);
  return r;
}

const CheckResult* find(const Report& r, const std::string& id) {
  for (const auto& x : r.results)
    if (x.check_id == id) return &x;
  return nullptr;
}

bool passed(const CheckResult& r) {
  return r.status == Status::Pass || r.status == Status::ProbablyPass ||
         (r.status == Status::Overflowed && r.mode == Mode::Sampled);
}

Line static_identities(const Report& r, double secs) {
  Line l;
  std::size_t n = 0;
  for (const auto& c : static_checks()) {
    const CheckResult* x = find(r, c.id);
    l.require(x && x->status == Status::Pass && x->residual_terms == 0, x ? brief(*x) : c.id + " missing");
    ++n;
  }
  l.require(secs < 10, "static suite took " + std::to_string(secs) + " s");
  if (l.ok) l.detail = std::to_string(n) + " identities exact, " + std::to_string(secs).substr(0, 4) + " s";
  return l;
}

Line f_value(const Report& r) {
  Line l;
  const CheckResult* x = find(r, "f-pi4");
  l.require(x && x->status == Status::Pass, x ? brief(*x) : "f-pi4 missing");
  if (l.ok) l.detail = "F(pi/4,0,0) = 15 rho/(8 b); 1.875 at rho = b = 1";
  return l;
}

Line replays(const Report& r) {
  Line l;
  const char* ids[] = {"closure-cw",          "cbar-cbeta",         "abeta-alpha", "xy-alpha", "xy-beta",
                       "second-order-coeffs", "abeta-alpha-closed", "cubic-elim",  "branch-F"};
  std::size_t sampled = 0;
  for (const char* id : ids) {
    const CheckResult* x = find(r, id);
    l.require(x && passed(*x), x ? brief(*x) : std::string(id) + " missing");
    if (x && x->mode == Mode::Sampled) ++sampled;
  }
  if (l.ok) l.detail = "9 replays, " + std::to_string(sampled) + " via sampled fallback";
  return l;
}

Line mixed_partial(const Report& r) {
  Line l;
  const CheckResult* x = find(r, "mixed-partial-residual");
  l.require(x && passed(*x), x ? brief(*x) : "mixed-partial-residual missing");
  if (x && !l.ok)
    for (const auto& n : x->notes)
      if (n.find("mismatch") != std::string::npos && n.find("residual") != std::string::npos) l.detail += "; " + n;
  if (l.ok) l.detail = "residual = p16 X^2 + p17 X + p18 Y + p19";
  return l;
}

Line nonvanishing(const Report& r) {
  Line l;
  std::size_t rows = 0, bad = 0;
  for (const auto& x : r.results) {
    const std::string& id = x.check_id;
    if (starts_with(id, "cubic-real") || starts_with(id, "p23-nonreal") || starts_with(id, "deriv-den") ||
        starts_with(id, "g-nonvanishing") || starts_with(id, "p16-special") || starts_with(id, "f-nonvanishing")) {
      ++rows;
      if (x.status != Status::Pass) ++bad;
      l.require(x.status == Status::Pass, brief(x));
    }
  }
  l.require(rows > 0, "no grid rows");
  if (bad) l.detail = std::to_string(bad) + " of " + std::to_string(rows) + " grid rows not Pass; first: " + l.detail;
  if (l.ok) l.detail = std::to_string(rows) + " grid rows";
  return l;
}

Line properties() {
  Line l;
  auto check = [&](const char* name, const props::Outcome& o) {
    l.require(o.ok, std::string(name) + ": " + o.witness);
  };
  check("normalize", props::normalize_idempotent(1000, 101));
  check("conjugation", props::conjugation_involution(1000, 102));
  check("derivatives", props::derivative_rules(1000, 103));
  check("xy-confluence", props::xy_confluence(200, 104));
  Real worst;
  check("coherence", props::exact_float_coherence(1000, 105, &worst));
  if (l.ok) l.detail = "1000 cases per law; worst exact/float error " + format_real(worst, 3);
  return l;
}

Line ode(const Report& r) {
  Line l;
  const CheckResult* x = find(r, "ode-rk4-order");
  l.require(x && x->status == Status::Pass, x ? brief(*x) : "ode-rk4-order missing");
  if (l.ok && !x->notes.empty()) l.detail = x->notes.front();
  return l;
}

}  // namespace

int main() {
  double t_static = 0, t_jet = 0, t_numeric = 0;
  const Report st = run("static", &t_static);
  const Report jet = run("jet", &t_jet);
  const Report num = run("numeric", &t_numeric);

  const std::vector<std::pair<const char*, std::function<Line()>>> criteria = {
      {"static identity suite", [&] { return static_identities(st, t_static); }},
      {"F at pi/4", [&] { return f_value(num); }},
      {"derivation replays", [&] { return replays(jet); }},
      {"mixed-partial residual", [&] { return mixed_partial(jet); }},
      {"numeric non-vanishing", [&] { return nonvanishing(num); }},
      {"kernel properties", [&] { return properties(); }},
      {"RK4 order", [&] { return ode(num); }},
  };

  int failed = 0;
  int k = 0;
  for (const auto& [name, run_line] : criteria) {
    Line l;
    try {
      l = run_line();
    } catch (const std::exception& e) {
      l.ok = false;
      l.detail = std::string("error: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s\n", l.ok ? "PASS" : "FAIL", ++k, name, l.detail.c_str());
    if (!l.ok) ++failed;
  }
  std::printf("suite time: static %.1f s, jet %.1f s, numeric %.1f s\n", t_static, t_jet, t_numeric);
  return failed ? 1 : 0;
}
