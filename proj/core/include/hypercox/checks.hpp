#pragma once

#include <string>
#include <vector>

namespace hypercox {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;  // one line per sub-check, failures marked
};

struct CriterionInfo {
  int id;
  const char* name;
};
const std::vector<CriterionInfo>& acceptance_criteria();

// Runs the criteria whose id or name matches one of `filter` (all if empty).
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& filter = {});
CriterionResult run_criterion(int id);

}  // namespace hypercox
