#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rsat {

/// Default cap on enumerated cells / visited combinations for one sweep.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

/// Thrown when an exhaustive sweep would exceed its budget. Exhaustive
/// routines never fall back to sampling on their own.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, int completed_level = -1, double coverage = 0.0)
      : std::runtime_error(what), completed_level_(completed_level), coverage_(coverage) {}

  /// Largest fully processed layer, -1 when nothing was run.
  int completed_level() const { return completed_level_; }
  /// Fraction of targets covered when the sweep stopped.
  double coverage() const { return coverage_; }

 private:
  int completed_level_;
  double coverage_;
};

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

inline std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = sat_mul(r, b);
  return r;
}

inline void require_budget(std::uint64_t needed, std::uint64_t budget, const std::string& what) {
  if (needed > budget)
    throw BudgetExceeded(what + ": needs " + std::to_string(needed) + " > budget " +
                         std::to_string(budget));
}

}  // namespace rsat
