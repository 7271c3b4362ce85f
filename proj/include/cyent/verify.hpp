#pragma once

// One-shot run of every cross-module invariant, per dimension.

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cyent {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  int dim = 0; // 0 for dimension-independent checks
  CheckStatus status = CheckStatus::Skipped;
  std::string detail; // counterexample data on failure
};

struct VerifyOptions {
  std::vector<int> dims;
  double budget_seconds = 120.0;
  std::uint64_t seed = 20240611;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<int> dims;
  std::vector<CheckResult> checks;

  std::size_t count(CheckStatus s) const;
  bool budget_exceeded() const { return count(CheckStatus::Skipped) > 0; }
  bool all_passed() const { return count(CheckStatus::Fail) == 0 && !budget_exceeded(); }
  nlohmann::ordered_json to_json() const;
};

// Throws InvalidInput for dims outside 3..8. Checks run in parallel; results
// are ordered by (dim, check) regardless of completion order. Checks that
// have not started when the budget runs out are reported as skipped.
VerifyReport verify_suite(const VerifyOptions &options);

} // namespace cyent
