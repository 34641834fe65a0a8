#include "sdof/verify.hpp"

#include <gtest/gtest.h>

namespace sdof {
namespace {

TEST(VerifyGrid, ClosedFormsMatchOracles) {
  const auto report = verify_grid({});
  for (const char* name : {"bob_split_optimum", "worst_case_closed_form", "eve_extreme_split", "helper_allocation", "budget", "range"}) {
    const auto* c = report.find(name);
    ASSERT_NE(c, nullptr) << name;
    EXPECT_EQ(c->mismatches, 0) << name;
    EXPECT_GT(c->evaluated, 0) << name;
  }
  EXPECT_EQ(report.find("bob_split_optimum")->evaluated, 10 * 12 * 13 * 13);
  EXPECT_EQ(report.find("worst_case_closed_form")->evaluated, 10 * 12 * 13);
}

TEST(VerifyGrid, DegenerateGridPasses) {
  VerifyOptions o;
  o.bounds = {1, 1, 0, 0};
  EXPECT_TRUE(verify_grid(o).passed());
}

TEST(VerifyGrid, CorruptedFormulaIsCaught) {
  VerifyOptions o;
  o.bounds = {4, 4, 3, 4};
  o.corrupt_closed_form = true;
  o.max_counterexamples = 3;
  const auto report = verify_grid(o);
  EXPECT_FALSE(report.passed());
  const auto* t1 = report.find("bob_split_optimum");
  EXPECT_GT(t1->mismatches, 0);
  EXPECT_EQ(t1->counterexamples.size(), 3u);
  EXPECT_NE(t1->counterexamples.front().find("n_a="), std::string::npos);
}

}  // namespace
}  // namespace sdof
