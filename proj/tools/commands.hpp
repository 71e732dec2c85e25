#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tropical/bounds.hpp"
#include "tropical/family.hpp"
#include "tropical/product_lab.hpp"

namespace tropical::cli {

using nlohmann::json;

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kAssumptionFailure = 2,
  kNotRankOne = 3,
  kBudgetExceeded = 4,
};

struct CommonOptions {
  std::string family_path;
  std::optional<std::string> expected_path;  // overrides the family file's "expected" block
  bool force = false;
};

struct TransientArgs {
  std::size_t horizon = 40;
  SearchMode mode = SearchMode::Sampled;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t budget = 1U << 22;
  std::size_t max_counterexamples = 50;
};

struct CommandResult {
  int exit_code = kSuccess;
  json report;
};

CommandResult run_validate(const CommonOptions& opts);
CommandResult run_derive(const CommonOptions& opts);
CommandResult run_bound(const CommonOptions& opts, const std::optional<std::string>& sequence_path);
CommandResult run_check(const CommonOptions& opts, const std::string& sequence_path);
CommandResult run_transient(const CommonOptions& opts, const TransientArgs& args);

json validation_json(const ValidationReport& report);
json bound_json(const BoundReport& report);

/// Mismatches between `expected` and the computed values under the same keys.
json deviations(const json& expected, const json& computed);

/// Human-oriented rendering of a report; not a stable format.
std::string render_pretty(const json& report);

}  // namespace tropical::cli
