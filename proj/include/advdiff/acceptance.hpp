#pragma once

#include <string>
#include <vector>

namespace advdiff {

// One measured quantity with its pinned tolerance. Report-only rows carry a
// NaN tolerance and always pass; pass for ">=" style checks means the value
// reached the tolerance.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int criterion = 0;  // 0 = informational
};

struct CriterionSummary {
  int id = 0;
  std::string title;
  bool checks_pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // NaN when unbudgeted

  bool within_budget() const;
  bool pass() const { return checks_pass && within_budget(); }
};

struct AcceptanceOutcome {
  std::vector<CheckResult> checks;
  std::vector<CriterionSummary> criteria;

  // All numeric checks pass; deterministic, used by the verify command.
  bool checks_pass = false;
  // Numeric checks plus the wall-clock budgets; used by the acceptance
  // binary.
  bool pass_with_budgets = false;
};

// Runs every acceptance criterion at its pinned tolerance plus the
// informational measurements; deterministic.
AcceptanceOutcome run_acceptance_suite();

}  // namespace advdiff
