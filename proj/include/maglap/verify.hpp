#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace maglap {

enum class Budget { small, standard, large };

std::string_view to_string(Budget budget);
Budget parse_budget(std::string_view name);  // "small" | "default" | "large"

/// Random graphs drawn per invariant.
std::size_t instances_for(Budget budget);

struct VerifyOptions {
  Budget budget = Budget::standard;
  std::uint64_t seed = 0;
  /// Test hook: nudge one eigenvalue before the certificates are recomputed.
  bool inject_eigen_perturbation = false;
};

struct InvariantResult {
  std::string name;
  std::size_t instances = 0;
  double worst = 0.0;      // largest observed error
  double tolerance = 0.0;  // pass iff worst <= tolerance and no failure noted
  bool passed = true;
  std::string detail;  // first failure, if any
};

struct VerifyReport {
  std::vector<InvariantResult> results;
  double seconds = 0.0;

  bool all_passed() const;
};

/// Runs every invariant on seeded random graphs. Deterministic given options.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace maglap
