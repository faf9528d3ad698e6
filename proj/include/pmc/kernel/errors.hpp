#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmc {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A denominator reduced to zero modulo s^2 + c^2 - 1.
class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("denominator is zero modulo s^2 + c^2 - 1") {}
};

/// Exact evaluation hit a vanishing denominator; callers resample.
class PoleAtPoint : public Error {
 public:
  explicit PoleAtPoint(const std::string& where = "")
      : Error("denominator vanishes at evaluation point" + (where.empty() ? "" : ": " + where)) {}
};

/// An intermediate polynomial grew past the configured term budget.
class ReductionOverflow : public Error {
 public:
  ReductionOverflow(std::size_t terms, std::size_t budget)
      : Error("term budget exceeded: " + std::to_string(terms) + " > " + std::to_string(budget)),
        terms_(terms),
        budget_(budget) {}
  std::size_t terms() const { return terms_; }
  std::size_t budget() const { return budget_; }

 private:
  std::size_t terms_;
  std::size_t budget_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
      : Error(format(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string msg = "syntax error at byte " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    return msg + ", found " + found;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// `alpha` used outside sin/cos/cot, or a non-integer exponent.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  explicit UnknownId(const std::string& id) : Error("unknown catalog id: " + id) {}
};

/// A jet symbol the requested operator cannot differentiate at this level.
class UnsupportedSymbol : public Error {
 public:
  using Error::Error;
};

class DegenerateLeadingCoefficient : public Error {
 public:
  DegenerateLeadingCoefficient() : Error("leading coefficient of cubic is (numerically) zero") {}
};

class AllRootsReal : public Error {
 public:
  AllRootsReal() : Error("all cubic roots are real: point lies outside the general-type regime") {}
};

class DerivativeDenominatorZero : public Error {
 public:
  DerivativeDenominatorZero() : Error("3 p16 P^2 + 2 p20 P + p21 vanishes at this root") {}
};

class PoleNearPoint : public Error {
 public:
  explicit PoleNearPoint(const std::string& where = "")
      : Error("denominator below tolerance" + (where.empty() ? "" : ": " + where)) {}
};

class PoleEncountered : public Error {
 public:
  PoleEncountered(double last_alpha, const std::string& why)
      : Error("pole encountered after alpha = " + std::to_string(last_alpha) + " (" + why + ")"),
        last_alpha_(last_alpha) {}
  double last_good_alpha() const { return last_alpha_; }

 private:
  double last_alpha_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmc
