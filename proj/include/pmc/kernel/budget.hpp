#pragma once

#include <cstddef>
#include <limits>

#include "pmc/kernel/errors.hpp"

namespace pmc::budget {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Per-thread ceiling on the number of terms any single intermediate
/// polynomial may hold. Unlimited outside a Scope.
inline std::size_t& current_limit() {
  thread_local std::size_t limit = kUnlimited;
  return limit;
}

inline void check(std::size_t terms) {
  if (terms > current_limit()) throw ReductionOverflow(terms, current_limit());
}

/// Installs a term budget for the current thread until destruction.
class Scope {
 public:
  explicit Scope(std::size_t limit) : saved_(current_limit()) { current_limit() = limit; }
  ~Scope() { current_limit() = saved_; }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  std::size_t saved_;
};

}  // namespace pmc::budget
