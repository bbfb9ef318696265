#pragma once

#include <functional>
#include <string>
#include <vector>

namespace quadlat {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;  // seconds allowed
};

/// A1..A10 in ids; empty means all. Criteria are run in dependency order
/// (A6 after A1, A7, A8) and reported through on_result as they finish.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& ids, int jobs = 1,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// The ids covered by the quick scope (seconds to a couple of minutes).
const std::vector<std::string>& quick_criteria();
const std::vector<std::string>& all_criteria();

}  // namespace quadlat
