#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmc/verify/suite.hpp"

using namespace pmc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

CheckResult result(const std::string& id, Status st, Mode m = Mode::Symbolic) {
  CheckResult r;
  r.check_id = id;
  r.status = st;
  r.mode = m;
  return r;
}

RunConfig config(const std::string& suite, Mode mode = Mode::Symbolic) {
  RunConfig c;
  c.suite = suite;
  c.mode = mode;
  c.timing = false;
  return c;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST(Report, EmptySuite) {
  Report r{kEngineVersion, RunConfig{}, {}};
  auto j = to_json(r);
  EXPECT_TRUE(j["results"].is_array());
  EXPECT_TRUE(j["results"].empty());
  for (const char* k : {"pass", "probably_pass", "fail", "skipped", "overflowed", "total"}) EXPECT_EQ(j["summary"][k], 0);
  EXPECT_EQ(exit_code(r), 0);
}

TEST(Report, SinglePass) {
  Report r{kEngineVersion, RunConfig{}, {result("x", Status::Pass)}};
  auto j = to_json(r);
  EXPECT_EQ(j["summary"]["pass"], 1);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_TRUE(j["results"][0]["witness"].is_null());
  EXPECT_NE(render_text(r).find("x"), std::string::npos);
}

TEST(Report, ReemissionIsByteIdentical) {
  Report r{kEngineVersion, RunConfig{}, {result("a", Status::Pass), result("b", Status::Fail)}};
  r.results[1].witness = "w";
  r.results[1].notes = {"n1", "n2"};
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "pmc_report_1.json").string(), p2 = (dir / "pmc_report_2.json").string();
  std::ostringstream sink;
  emit_report(r, ReportFormat::Json, p1, sink);
  emit_report(r, ReportFormat::Json, p2, sink);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_FALSE(slurp(p1).empty());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST(Report, UnwritablePath) {
  Report r{kEngineVersion, RunConfig{}, {}};
  std::ostringstream sink;
  EXPECT_THROW(emit_report(r, ReportFormat::Json, "/nonexistent-dir/x.json", sink), IoError);
  emit_report(r, ReportFormat::Text, "-", sink);
  EXPECT_FALSE(sink.str().empty());
}

TEST(ExitCode, Classification) {
  EXPECT_EQ(exit_code({kEngineVersion, {}, {result("a", Status::Pass), result("b", Status::Skipped)}}), 0);
  EXPECT_EQ(exit_code({kEngineVersion, {}, {result("a", Status::ProbablyPass, Mode::Sampled)}}), 0);
  EXPECT_EQ(exit_code({kEngineVersion, {}, {result("a", Status::Pass), result("b", Status::Fail)}}), 1);
  EXPECT_EQ(exit_code({kEngineVersion, {}, {result("a", Status::Overflowed)}}), 3);
  EXPECT_EQ(exit_code({kEngineVersion, {}, {result("a", Status::Overflowed, Mode::Sampled)}}), 0);
  EXPECT_EQ(exit_code({kEngineVersion, {}, {result("a", Status::Overflowed), result("b", Status::Fail)}}), 1);
}

TEST(RunSuite, ConfigErrors) {
  EXPECT_THROW(run_suite(config("everything")), ConfigError);
  RunConfig c = config("static");
  c.samples = 0;
  EXPECT_THROW(run_suite(c), ConfigError);
  c = config("numeric");
  c.grid_path = "/nonexistent-grid.csv";
  EXPECT_THROW(run_suite(c), Error);
}

TEST(RunSuite, StaticSymbolicAllPass) {
  const Report r = run_suite(config("static"));
  ASSERT_FALSE(r.results.empty());
  for (const auto& x : r.results) EXPECT_EQ(x.status, Status::Pass) << x.check_id << ": " << x.witness;
  EXPECT_EQ(exit_code(r), 0);
}

TEST(RunSuite, DeterministicJsonWithoutTiming) {
  const RunConfig c = config("static", Mode::Sampled);
  const std::string a = render(run_suite(c, 1), ReportFormat::Json);
  const std::string b = render(run_suite(c, 2), ReportFormat::Json);
  EXPECT_EQ(a, b);
}

// Sampled replay: every check agrees with its symbolic verdict. The mixed-partial
// residual is the one replay that does not close against the printed p18.
TEST(RunSuite, JetSampled) {
  RunConfig c = config("jet", Mode::Sampled);
  c.samples = 100;
  c.seed = 7;
  const Report r = run_suite(c);
  ASSERT_EQ(r.results.size(), replay_checks().size());
  for (const auto& x : r.results) {
    EXPECT_EQ(x.mode, Mode::Sampled);
    if (x.check_id == "mixed-partial-residual")
      EXPECT_EQ(x.status, Status::Fail);
    else
      EXPECT_EQ(x.status, Status::ProbablyPass) << x.check_id << ": " << x.witness;
  }
  EXPECT_EQ(exit_code(r), 1);
}

TEST(RunSuite, OverflowFallsBackToSampling) {
  RunConfig c = config("jet");
  c.budget = 50;
  c.fallback_samples = 10;
  const Report r = run_suite(c);
  bool fell_back = false;
  for (const auto& x : r.results)
    if (x.status == Status::Overflowed) {
      fell_back = true;
      EXPECT_EQ(x.mode, Mode::Sampled) << x.check_id;
    }
  EXPECT_TRUE(fell_back);
}

TEST(RunSuite, NumericRows) {
  const Report r = run_suite(config("numeric"));
  std::size_t f_rows = 0, p16_rows = 0;
  for (const auto& x : r.results) {
    if (starts_with(x.check_id, "f-nonvanishing") || starts_with(x.check_id, "f-pi4")) {
      ++f_rows;
      EXPECT_EQ(x.status, Status::Pass) << x.check_id;
    }
    if (starts_with(x.check_id, "p16-special")) {
      ++p16_rows;
      EXPECT_EQ(x.status, Status::Pass) << x.check_id;
    }
    if (starts_with(x.check_id, "g-nonvanishing"))
      EXPECT_TRUE(x.status == Status::Pass || x.status == Status::Skipped) << x.check_id << ": " << x.witness;
    if (starts_with(x.check_id, "ode-") || starts_with(x.check_id, "float-coherence") ||
        starts_with(x.check_id, "cubic-real"))
      EXPECT_EQ(x.status, Status::Pass) << x.check_id << ": " << x.witness;
  }
  EXPECT_EQ(f_rows, 16u);
  EXPECT_EQ(p16_rows, 15u);
}

TEST(Workers, EnvironmentOverride) {
  const char* old = std::getenv("PMC_VERIFY_THREADS");
  const std::string saved = old ? old : "";
  setenv("PMC_VERIFY_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("PMC_VERIFY_THREADS", "0", 1);
  EXPECT_THROW(worker_count(), ConfigError);
  setenv("PMC_VERIFY_THREADS", "two", 1);
  EXPECT_THROW(worker_count(), ConfigError);
  if (old) setenv("PMC_VERIFY_THREADS", saved.c_str(), 1);
  else unsetenv("PMC_VERIFY_THREADS");
}
