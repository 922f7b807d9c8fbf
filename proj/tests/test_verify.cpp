#include <doctest.h>

#include "coalesce/verify.hpp"

using namespace coalesce;

TEST_CASE("suites") {
  CHECK(parse_suite("paper-repro") == Suite::paper_repro);
  CHECK(to_string(parse_suite("invariants")) == "invariants");
  CHECK_THROWS_AS(parse_suite("everything"), ConfigError);
  CHECK(suite_criteria(Suite::all).size() == 12);
  CHECK(suite_criteria(Suite::bounds) == std::vector<int>{10});
}

TEST_CASE("result lines") {
  CriterionResult r{8, "fold law", true, "power 0.5", 0.0, {}};
  CHECK(format_result_line(r) == "[PASS] 8 fold law: power 0.5");
  r.passed = false;
  CHECK(format_result_line(r).rfind("[FAIL] 8", 0) == 0);
}

TEST_CASE("cheap criteria pass when run in parallel") {
  const auto results = run_criteria({5, 8, 11}, 3);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) CHECK_MESSAGE(r.passed, format_result_line(r));
  CHECK_THROWS_AS(run_criteria({13}), ConfigError);
}
