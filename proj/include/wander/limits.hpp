#pragma once

#include <cstddef>

namespace wander {

inline constexpr int kDefaultDegreeCap = 64;
inline constexpr std::size_t kDefaultBitBudget = 1'000'000;

/// Resource caps shared by the modules. The CLI fills these from
/// WANDER_DEGREE_CAP and WANDER_BIT_BUDGET; library callers pass their own.
struct Limits {
  int degree_cap = kDefaultDegreeCap;
  std::size_t bit_budget = kDefaultBitBudget;

  /// Defaults overridden by the environment. Throws InvalidArgument on
  /// malformed values.
  static Limits from_environment();
};

}  // namespace wander
