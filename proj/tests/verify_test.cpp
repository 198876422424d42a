#include "maglap/verify.hpp"

#include <gtest/gtest.h>

#include "maglap/errors.hpp"

namespace maglap {
namespace {

TEST(Verify, SmallBudgetPasses) {
  VerifyOptions opt;
  opt.budget = Budget::small;
  opt.seed = 11;
  const VerifyReport report = run_verification(opt);
  for (const InvariantResult& r : report.results) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    EXPECT_GT(r.instances, 0u) << r.name;
  }
  EXPECT_TRUE(report.all_passed());
}

TEST(Verify, InjectedPerturbationFailsResidualInvariant) {
  VerifyOptions opt;
  opt.budget = Budget::small;
  opt.inject_eigen_perturbation = true;
  const VerifyReport report = run_verification(opt);
  EXPECT_FALSE(report.all_passed());
  for (const InvariantResult& r : report.results) {
    if (r.name == "eigen_certificates")
      EXPECT_FALSE(r.passed);
    else
      EXPECT_TRUE(r.passed) << r.name;
  }
}

TEST(Verify, DeterministicForSeed) {
  VerifyOptions opt;
  opt.budget = Budget::small;
  opt.seed = 5;
  const VerifyReport a = run_verification(opt);
  const VerifyReport b = run_verification(opt);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i)
    EXPECT_EQ(a.results[i].worst, b.results[i].worst) << a.results[i].name;
}

TEST(Verify, BudgetNames) {
  EXPECT_EQ(parse_budget("small"), Budget::small);
  EXPECT_EQ(parse_budget("default"), Budget::standard);
  EXPECT_EQ(parse_budget("large"), Budget::large);
  EXPECT_THROW(parse_budget("huge"), ParameterError);
  EXPECT_LT(instances_for(Budget::small), instances_for(Budget::standard));
}

}  // namespace
}  // namespace maglap
