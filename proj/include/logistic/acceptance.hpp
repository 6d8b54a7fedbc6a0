#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace logistic {

struct CriterionResult {
  std::string id;     // "1".."10", with 9a/9b/9c
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  // Smaller Monte-Carlo sample sizes for the slow criteria (6, 8, 9a, 10).
  bool quick = false;
  unsigned threads = 1;
  std::uint64_t seed = 20240607;
  // Criterion ids to run ("9" selects 9a-9c); empty runs everything.
  std::vector<std::string> only;
};

std::vector<CriterionResult> run_acceptance(
    const SuiteOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3   title  detail  (1.2 s)"
std::string format_result_line(const CriterionResult& result);

}  // namespace logistic
