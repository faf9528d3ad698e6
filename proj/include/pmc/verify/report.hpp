#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmc/kernel/errors.hpp"

namespace pmc {

enum class Mode { Symbolic, Sampled, Numeric };
enum class Status { Pass, ProbablyPass, Fail, Skipped, Overflowed };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Symbolic: return "symbolic";
    case Mode::Sampled: return "sampled";
    case Mode::Numeric: return "numeric";
  }
  return "?";
}

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "Pass";
    case Status::ProbablyPass: return "ProbablyPass";
    case Status::Fail: return "Fail";
    case Status::Skipped: return "Skipped";
    case Status::Overflowed: return "Overflowed";
  }
  return "?";
}

struct CheckResult {
  std::string check_id;
  std::string paper_anchor;
  Mode mode = Mode::Symbolic;
  Status status = Status::Skipped;
  std::size_t residual_terms = 0;
  std::string witness;
  std::int64_t time_ms = 0;
  std::vector<std::string> notes;
};

struct RunConfig {
  std::string suite = "all";
  Mode mode = Mode::Symbolic;
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  std::size_t budget = 5'000'000;
  unsigned precision_bits = 128;
  std::size_t fallback_samples = 200;
  bool timing = true;
  std::string grid_path;  // empty: the built-in grid
};

struct Summary {
  std::size_t pass = 0, probably_pass = 0, fail = 0, skipped = 0, overflowed = 0;
};

struct Report {
  std::string version;
  RunConfig config;
  std::vector<CheckResult> results;

  Summary summary() const {
    Summary s;
    for (const auto& r : results) {
      switch (r.status) {
        case Status::Pass: ++s.pass; break;
        case Status::ProbablyPass: ++s.probably_pass; break;
        case Status::Fail: ++s.fail; break;
        case Status::Skipped: ++s.skipped; break;
        case Status::Overflowed: ++s.overflowed; break;
      }
    }
    return s;
  }
};

inline constexpr const char* kEngineVersion = "1.0.0";

inline nlohmann::ordered_json to_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = r.version;
  const auto& c = r.config;
  j["config"] = {{"suite", c.suite},
                 {"mode", mode_name(c.mode)},
                 {"samples", c.samples},
                 {"seed", c.seed},
                 {"budget", c.budget},
                 {"precision_bits", c.precision_bits},
                 {"fallback_samples", c.fallback_samples},
                 {"grid", c.grid_path.empty() ? "default" : c.grid_path}};
  j["results"] = ordered_json::array();
  for (const auto& x : r.results) {
    ordered_json e;
    e["check_id"] = x.check_id;
    e["paper_anchor"] = x.paper_anchor;
    e["mode"] = mode_name(x.mode);
    e["status"] = status_name(x.status);
    e["residual_terms"] = x.residual_terms;
    e["witness"] = x.witness.empty() ? ordered_json(nullptr) : ordered_json(x.witness);
    e["time_ms"] = x.time_ms;
    e["notes"] = x.notes;
    j["results"].push_back(e);
  }
  const Summary s = r.summary();
  j["summary"] = {{"pass", s.pass},
                  {"probably_pass", s.probably_pass},
                  {"fail", s.fail},
                  {"skipped", s.skipped},
                  {"overflowed", s.overflowed},
                  {"total", r.results.size()}};
  return j;
}

inline std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "pmc-verify " << r.version << "  suite=" << r.config.suite << " mode=" << mode_name(r.config.mode)
      << " samples=" << r.config.samples << " seed=" << r.config.seed << "\n";
  std::size_t w = 36;
  for (const auto& x : r.results) w = std::max(w, x.check_id.size() + 2);
  const int width = static_cast<int>(w);
  out << std::left << std::setw(width) << "check" << std::setw(10) << "mode" << std::setw(14) << "status"
      << std::right << std::setw(10) << "residual" << std::setw(10) << "ms" << "  witness\n";
  for (const auto& x : r.results) {
    out << std::left << std::setw(width) << x.check_id << std::setw(10) << mode_name(x.mode) << std::setw(14)
        << status_name(x.status) << std::right << std::setw(10) << x.residual_terms << std::setw(10) << x.time_ms
        << "  " << x.witness << "\n";
    for (const auto& n : x.notes) out << std::string(w + 2, ' ') << "- " << n << "\n";
  }
  const Summary s = r.summary();
  out << "summary: pass=" << s.pass << " probably_pass=" << s.probably_pass << " fail=" << s.fail
      << " skipped=" << s.skipped << " overflowed=" << s.overflowed << " total=" << r.results.size() << "\n";
  return out.str();
}

enum class ReportFormat { Text, Json };

inline std::string render(const Report& r, ReportFormat f) {
  return f == ReportFormat::Json ? to_json(r).dump(2) + "\n" : render_text(r);
}

/// Writes the report; "-" is standard output.
inline void emit_report(const Report& r, ReportFormat f, const std::string& path, std::ostream& stdout_stream) {
  const std::string text = render(r, f);
  if (path == "-") {
    stdout_stream << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw IoError("write failed: " + path);
}

}  // namespace pmc
