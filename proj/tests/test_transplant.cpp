#include <gtest/gtest.h>

#include <cmath>

#include "trispec/transplant.hpp"
#include "trispec/transplant_verify.hpp"

using namespace trispec;
using namespace trispec::transplant;

TEST(Transplant, LemtraceAffineInGammaAndDelta) {
  TransplantCondition k{0.3, 2.1, -0.4, 1.7, 1.0, 0.0, 0.0};
  auto at = [&](double g, double d) {
    auto c = k;
    c.gamma = g;
    c.delta = d;
    return lemtrace_lhs(c);
  };
  for (double d : {-0.3, 0.0, 0.2}) {
    double f0 = at(0.1, d), f1 = at(0.4, d), f2 = at(0.7, d);
    EXPECT_NEAR(f1 - f0, f2 - f1, 1e-14);
  }
  for (double g : {0.0, 0.5, 1.0}) {
    double f0 = at(g, -0.4), f1 = at(g, 0.0), f2 = at(g, 0.4);
    EXPECT_NEAR(f1 - f0, f2 - f1, 1e-14);
  }
}

TEST(Transplant, LemtraceIdentityMap) {
  // Same triangle: the quotient is exactly 1 for every gamma.
  for (double g : {0.0, 0.3, 1.0}) EXPECT_NEAR(lemtrace_lhs({0.2, 1.5, 0.2, 1.5, 1.0, g, 0.1}), 1.0, 1e-15);
  EXPECT_THROW(lemtrace_lhs({0.0, 1.0, 0.0, 0.0, 1.0, 0.5, 0.0}), std::invalid_argument);
}

TEST(Transplant, BranchSelection) {
  EXPECT_EQ(prop_unknown_branch(2.0, 0.5), Branch::equilateral);
  EXPECT_EQ(prop_unknown_branch(3.0, 0.9), Branch::right);
  EXPECT_EQ(prop_unknown_branch(sqrt3 + 1e-9, 0.75), Branch::right);
  EXPECT_THROW(prop_unknown_branch(sqrt3, 0.5), std::domain_error);
  EXPECT_THROW(prop_unknown_branch(1.0, 0.5), std::domain_error);
}

TEST(Transplant, BranchConditionsEquivalent) {
  // gamma < 3/4 is exactly where the equilateral condition holds.
  for (double b : {1.8, 2.5, 4.0})
    for (double g : {0.1, 0.5, 0.74, 0.76, 0.95}) {
      EXPECT_EQ(equilateral_condition(b, g, 0.0).holds(), g < 0.75) << b << ' ' << g;
      bool right = b * b + 50.0 / (11.0 - 8.0 * g) > 13.0;
      EXPECT_EQ(right_condition(b, g, 0.0, +1).holds(), right) << b << ' ' << g;
    }
}

TEST(Transplant, CFuncs) {
  EXPECT_NEAR(C_funcs(sqrt3).C, 1.0, 1e-14);
  EXPECT_NEAR(C_funcs(sqrt3).Ctilde, 1.0, 1e-14);
  for (double b : open_grid(sqrt3, 2.5, 40)) EXPECT_GE(C_funcs(b).Ctilde, C_funcs(b).C);
  EXPECT_THROW(C_funcs(0.0), std::invalid_argument);
}

TEST(Transplant, CondCh) {
  auto r = condCh_verify(2.5, open_grid(sqrt3, 2.5, 50));
  EXPECT_EQ(r.verdict(), Verdict::pass);
  EXPECT_NEAR(C_funcs(2.5).Ctilde, condch_rhs(2.5, sqrt3), 1e-12);
  EXPECT_GT(C_funcs(2.5).Ctilde, condch_rhs(2.5, 2.0));
  EXPECT_THROW(condCh_verify(sqrt3, {2.0}), std::domain_error);
}

TEST(Transplant, Grids) {
  auto g = log_grid(sqrt3, 8.0, 50);
  ASSERT_EQ(g.size(), 50u);
  EXPECT_GT(g.front(), sqrt3);
  EXPECT_NEAR(g.back(), 8.0, 1e-12);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
  auto o = open_grid(0.0, 1.0, 3);
  EXPECT_EQ(o, (std::vector<double>{0.25, 0.5, 0.75}));
}

TEST(Transplant, Targets) {
  EXPECT_NEAR(equilateral_target(2), 160.0 * pi * pi / 9.0, 1e-10);
  EXPECT_NEAR(equilateral_target(1), 3.0 * 16.0 * pi * pi / 9.0, 1e-10);
  EXPECT_NEAR(right_target(1), 6.0 / 11.0 * 7.0 * 16.0 * pi * pi / 9.0, 1e-10);
}

TEST(Transplant, Theorem1Pipeline) {
  auto r = theorem1_verify(FanTriangle(0.0, 2.5), 1, 6);
  EXPECT_EQ(r.verdict(), Verdict::pass);
  auto eq = theorem1_verify(FanTriangle(0.0, sqrt3), 2, 6);
  EXPECT_EQ(eq.verdict(), Verdict::pass);
  EXPECT_THROW(theorem1_verify(FanTriangle(0.5, 2.5), 1, 6), std::domain_error);
  EXPECT_THROW(theorem1_verify(FanTriangle(0.0, 1.5), 1, 6), std::domain_error);
}

TEST(Transplant, Theorem1BranchReported) {
  auto r = theorem1_verify(FanTriangle(0.0, 3.0), 3, 6);
  bool found = false;
  for (const auto& [k, v] : r.info)
    if (k == "branch") {
      found = true;
      EXPECT_TRUE(v == "equilateral" || v == "right") << v;
    }
  EXPECT_TRUE(found);
}

TEST(Transplant, Theorem2SectorBranch) {
  auto r = theorem2_verify(2.5, 6);
  EXPECT_EQ(r.verdict(), Verdict::pass);
  auto big = theorem2_verify(6.0, 6);
  EXPECT_EQ(big.verdict(), Verdict::pass);
}

TEST(Transplant, Theorem2InterpolationBranch) {
  auto cert = certify::lemma62_verify();
  auto r = theorem2_verify(2.0, 6, &cert);
  EXPECT_EQ(r.verdict(), Verdict::pass);
  auto eq = theorem2_verify(sqrt3, 6);
  EXPECT_EQ(eq.verdict(), Verdict::inconclusive);
  EXPECT_THROW(theorem2_verify(1.5, 6), std::domain_error);
}
