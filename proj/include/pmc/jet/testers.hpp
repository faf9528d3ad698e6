#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "pmc/jet/replay.hpp"
#include "pmc/kernel/budget.hpp"
#include "pmc/kernel/sample_point.hpp"

namespace pmc {

/// Materializes every coefficient and tests it for exact zero. Throws
/// ReductionOverflow when an intermediate exceeds `term_budget`.
class SymbolicTester final : public ZeroTester {
 public:
  explicit SymbolicTester(std::size_t term_budget = budget::kUnlimited) : budget_(term_budget) {}

  using ZeroTester::vanishes;
  bool vanishes(const JetPoly<Formula>& p, const std::string& label) override {
    budget::Scope scope(budget_);
    bool ok = true;
    for (const auto& [m, c] : p.terms()) {
      TrigRational v = c.materialize();
      if (v.is_zero()) continue;
      ok = false;
      residual_terms += v.term_count();
      if (witness.empty())
        witness = label + ": coefficient of " + m.str() + " has " + std::to_string(v.term_count()) + " terms";
    }
    return ok;
  }

 private:
  std::size_t budget_;
};

/// Evaluates coefficients at n exact rational sample points; a miss is a
/// proof of non-vanishing, n hits make vanishing probable.
class SampledTester final : public ZeroTester {
 public:
  SampledTester(std::size_t points, std::uint64_t seed) : points_(points), seed_(seed) {}

  using ZeroTester::vanishes;
  bool vanishes(const JetPoly<Formula>& p, const std::string& label) override {
    std::size_t evaluated = 0, skipped = 0;
    for (std::uint64_t k = seed_; evaluated < points_; ++k) {
      if (skipped > 4 * points_ + 16) throw NumericError("too many poles while sampling");
      auto& ev = evaluator(k);
      try {
        for (const auto& [m, c] : p.terms()) {
          GaussianRational v = ev.eval(c);
          if (v.is_zero()) continue;
          ++residual_terms;
          if (witness.empty())
            witness = label + ": coefficient of " + m.str() + " is " + v.str() + " at " + sample_point(k).str();
          return false;
        }
      } catch (const PoleAtPoint&) {
        ++skipped;
        continue;
      }
      ++evaluated;
    }
    return true;
  }

  std::size_t points() const { return points_; }

 private:
  Evaluator<GaussianRational>& evaluator(std::uint64_t k) {
    auto it = evaluators_.find(k);
    if (it == evaluators_.end())
      it = evaluators_.emplace(k, std::make_unique<Evaluator<GaussianRational>>(sample_point(k).values())).first;
    return *it->second;
  }

  std::size_t points_;
  std::uint64_t seed_;
  std::map<std::uint64_t, std::unique_ptr<Evaluator<GaussianRational>>> evaluators_;
};

}  // namespace pmc
