#include "cyent/entropy.hpp"
#include "cyent/errors.hpp"
#include "cyent/parallel.hpp"
#include "cyent/verify.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace cyent;

TEST(ParallelSweep, MatchesSerialReference) {
  for (int d : {3, 4, 7}) {
    const VarietySpec X = make_variety(d);
    const auto par = sweep(X, -3, 3, 97, default_tolerance());
    const auto ser = sweep_serial(X, -3, 3, 97, default_tolerance());
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      EXPECT_EQ(par[i].index, ser[i].index);
      EXPECT_EQ(par[i].result.t, ser[i].result.t);
      EXPECT_EQ(par[i].result.lambda, ser[i].result.lambda);
      EXPECT_EQ(par[i].result.bracket.lo, ser[i].result.bracket.lo);
      EXPECT_EQ(par[i].result.bracket.hi, ser[i].result.bracket.hi);
      EXPECT_EQ(par[i].curve_residual, ser[i].curve_residual);
    }
  }
}

TEST(ParallelSweep, ThreadCountFromEnvironment) {
  ::setenv("CY_ENTROPY_THREADS", "2", 1);
  EXPECT_EQ(configured_threads(), 2);
  const auto two = sweep(make_variety(3), -1, 1, 21, default_tolerance());
  ::setenv("CY_ENTROPY_THREADS", "1", 1);
  EXPECT_EQ(configured_threads(), 1);
  const auto one = sweep(make_variety(3), -1, 1, 21, default_tolerance());
  ::unsetenv("CY_ENTROPY_THREADS");
  for (std::size_t i = 0; i < one.size(); ++i)
    EXPECT_EQ(one[i].result.lambda, two[i].result.lambda);
}

TEST(Verify, EmptyDimsIsTrivialPass) {
  const VerifyReport r = verify_suite({});
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, ZeroBudgetSkipsEverything) {
  VerifyOptions opt;
  opt.dims = {3};
  opt.budget_seconds = 0;
  const VerifyReport r = verify_suite(opt);
  EXPECT_FALSE(r.checks.empty());
  EXPECT_TRUE(r.budget_exceeded());
  EXPECT_EQ(r.count(CheckStatus::Skipped), r.checks.size());
}

TEST(Verify, RejectsUnsupportedDims) {
  VerifyOptions opt;
  opt.dims = {9};
  EXPECT_THROW(verify_suite(opt), InvalidInput);
  opt.dims = {2};
  EXPECT_THROW(verify_suite(opt), InvalidInput);
}

TEST(Verify, DimsThreeFourPassAndAreDeterministic) {
  VerifyOptions opt;
  opt.dims = {3, 4};
  const VerifyReport a = verify_suite(opt);
  for (const auto &c : a.checks)
    EXPECT_EQ(c.status, CheckStatus::Pass) << c.name << " d=" << c.dim << ": " << c.detail;
  const VerifyReport b = verify_suite(opt);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}
