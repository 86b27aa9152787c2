#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fraclap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured quantities against their tolerances
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<CriterionResult()> run;
};

// The built-in acceptance checks in order. Each run() fills passed and detail;
// run_criterion adds the timing and fails a check that overruns its budget.
const std::vector<Criterion>& acceptance_criteria();

CriterionResult run_criterion(const Criterion& criterion);

// One line per criterion: "[PASS] 01 name  detail  (t s / budget s)".
std::string format_result(const CriterionResult& result);

// Runs every criterion (or only `ids` when non-empty), printing each line to
// `sink` as soon as it finishes.
std::vector<CriterionResult> run_selftest(const std::vector<int>& ids = {},
                                          const std::function<void(const std::string&)>& sink = {});

}  // namespace fraclap
