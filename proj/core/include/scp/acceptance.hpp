#pragma once

#include <functional>
#include <string>
#include <vector>

namespace scp::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

int criterion_count() noexcept;
// Runs one criterion (1-based).  Exceptions thrown inside are caught and
// reported as a failure with the error text in `detail`.
CriterionResult run_criterion(int id);
// Runs the given criteria (all when empty), calling `on_result` after each one.
std::vector<CriterionResult> run_all(const std::vector<int>& ids = {},
                                     const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_line(const CriterionResult& r);

}  // namespace scp::acceptance
