#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmpopt::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

CriterionResult gde_accuracy();
CriterionResult query_accounting();
CriterionResult exact_ngd_bound();
CriterionResult comparison_ngd_end_to_end();
CriterionResult dp_soundness();
CriterionResult metric_properties();
CriterionResult reproducibility();

/// Runs every criterion, printing one PASS/FAIL line each to `out`.
std::vector<CriterionResult> run_all(std::ostream& out);

}  // namespace cmpopt::acceptance
