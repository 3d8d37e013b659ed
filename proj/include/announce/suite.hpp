#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace announce {

struct SuiteOptions {
  std::uint64_t seed = 20250801;
  // Overrides the state-count caps of the random-model pools; drawn
  // cyclically when several are given. Empty = the canonical caps.
  std::vector<int> sizes;
  // Quantifier budget; 0 keeps the canonical value (the grid experiment is
  // pinned to 2^22, everything else uses default_budget()).
  std::uint64_t budget = 0;
  // Skip the long-running grid experiment (criterion 7).
  bool include_slow = true;
  // Directory holding figure1.json and the tile-set assets.
  std::string asset_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // True for experiments whose outcome is recorded rather than asserted;
  // `pass` then only reflects completion within the time pin.
  bool recorded_only = false;
  std::vector<std::string> notes;
  double elapsed_ms = 0.0;
};

// Runs the eight acceptance criteria in order, streaming one line per
// criterion to `progress`.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream& progress);

bool all_passed(const std::vector<CriterionResult>& results);
nlohmann::json results_to_json(const std::vector<CriterionResult>& results);

}  // namespace announce
