#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coalesce/core.hpp"

namespace coalesce {

/// Outcome of one acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  std::vector<std::pair<std::string, double>> values;
};

enum class Suite { invariants, paper_repro, bounds, all };

/// Throws ConfigError for an unknown name.
Suite parse_suite(const std::string& name);
std::string to_string(Suite suite);

/// Criterion ids run by a suite.
std::vector<int> suite_criteria(Suite suite);

/// Runs the criteria; preset simulations run on up to `threads` workers.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, unsigned threads = 1);
std::vector<CriterionResult> run_suite(Suite suite, unsigned threads = 1);

/// `[PASS] 3 name: detail` style line.
std::string format_result_line(const CriterionResult& r);

}  // namespace coalesce
