#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rkhs::verify {

/// Outcome of one acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

/// Criteria 1-8. Each run is deterministic (fixed seeds) and its wall time
/// counts against the criterion's runtime limit.
CriterionResult run_criterion(int id);

/// Criterion ids of a suite: "transference" (1, 2, 8), "spectral" (3, 4, 5),
/// "mehler" (7), "mdm" (6) or "all". Unknown names throw a usage error.
std::vector<int> suite_criteria(std::string_view suite);

std::vector<CriterionResult> run_suite(std::string_view suite);

/// "PASS criterion <id>: <title>: <detail> [<s> s, limit <s> s]"
std::string format(const CriterionResult& result);

}  // namespace rkhs::verify
