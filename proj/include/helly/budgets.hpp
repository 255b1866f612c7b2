#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "helly/errors.hpp"

namespace helly {

/// Hard caps on exhaustive enumerations.  Exceeding a cap raises
/// budget_error; budgets are never silently truncated, because a
/// verification tool must not appear to verify what it skipped.
struct Budgets {
  std::uint64_t projective_points = 1'000'000;  // p^d cap for the eigenvector oracle
  std::uint64_t subspaces = 1'000'000;          // Gaussian-binomial total for the invariant oracle
  std::uint64_t subsets = 100'000;              // C(n, k) cap for Helly sweeps
  std::uint64_t index_subsets = 1ull << 24;     // 2^p cap for set-family scans

  /// Defaults, with every cap replaced by HELLY_BUDGET when that
  /// environment variable is set.
  static Budgets from_env() {
    Budgets b;
    if (const char* env = std::getenv("HELLY_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0' || v == 0) {
        throw input_error("HELLY_BUDGET must be a positive integer, got \"" +
                          std::string(env) + "\"");
      }
      b.projective_points = v;
      b.subspaces = v;
      b.subsets = v;
      b.index_subsets = v;
    }
    return b;
  }
};

}  // namespace helly
