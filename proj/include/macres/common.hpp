#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace macres {

/// Raised on contract violations (invalid distributions, mismatched
/// alphabets, parameter ranges, malformed channel files).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact enumeration would exceed the configured budget.
/// Callers are expected to fall back to Monte Carlo paths.
class BudgetError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kMassTol = 1e-12;
inline constexpr double kRowSumTol = 1e-9;
inline constexpr std::size_t kDefaultEnumBudget = 10'000'000;

/// Enumeration budget in joint-support entries. Overridable via the
/// MACRES_ENUM_BUDGET environment variable.
inline std::size_t enumeration_budget() {
  static const std::size_t budget = [] {
    if (const char* env = std::getenv("MACRES_ENUM_BUDGET")) {
      const long long v = std::atoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultEnumBudget;
  }();
  return budget;
}

/// pow(base, exp) for support sizes, throwing BudgetError past the budget.
inline std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  const std::size_t budget = enumeration_budget();
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > budget / base) {
      throw BudgetError("enumeration budget exceeded: " + std::to_string(base) +
                        "^" + std::to_string(exp) + " > " +
                        std::to_string(budget));
    }
    r *= base;
  }
  return r;
}

inline std::string version_string() {
#ifdef MACRES_VERSION
  return MACRES_VERSION;
#else
  return "dev";
#endif
}

}  // namespace macres
