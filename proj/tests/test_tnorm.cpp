#include <gtest/gtest.h>

#include "fuzzygh/tnorm.hpp"
#include "oracles.hpp"

using namespace fuzzygh;

namespace {

const std::vector<TNorm>& norms() {
  static const std::vector<TNorm> all{TNorm::minimum(), TNorm::product(), TNorm::lukasiewicz()};
  return all;
}

}  // namespace

TEST(TNormEval, ClosedForms) {
  EXPECT_DOUBLE_EQ(tn_eval(TNorm::product(), 0.5, 0.5), 0.25);
  EXPECT_NEAR(tn_eval(TNorm::lukasiewicz(), 0.7, 0.7), 0.4, 1e-15);
  for (const auto& n : norms()) EXPECT_DOUBLE_EQ(tn_eval(n, 0.3, 1.0), 0.3) << n.name();
  EXPECT_DOUBLE_EQ(tn_eval(TNorm::minimum(), 0.2, 0.9), 0.2);
  EXPECT_DOUBLE_EQ(tn_eval(TNorm::lukasiewicz(), 0.3, 0.4), 0.0);
}

TEST(TNormEval, RejectsOutOfRange) {
  EXPECT_THROW((void)tn_eval(TNorm::product(), -0.1, 0.5), std::domain_error);
  EXPECT_THROW((void)tn_eval(TNorm::product(), 0.5, 1.5), std::domain_error);
  EXPECT_THROW((void)tn_eval(TNorm::minimum(), std::nan(""), 0.5), std::domain_error);
}

TEST(TNormEval, ParseAndNames) {
  for (const auto& n : norms()) EXPECT_EQ(TNorm::parse(n.name()), n);
  EXPECT_THROW((void)TNorm::parse("hamacher"), std::invalid_argument);
}

TEST(TNormAxioms, ExactOnQuarterGrid) {
  const std::vector<double> g{0, 0.25, 0.5, 0.75, 1};
  for (const auto& n : norms()) {
    const auto r = tn_check_axioms(n, g);
    EXPECT_EQ(r.commutativity, 0.0) << n.name();
    EXPECT_EQ(r.associativity, 0.0) << n.name();
    EXPECT_EQ(r.identity, 0.0) << n.name();
    EXPECT_EQ(r.monotonicity, 0.0) << n.name();
    EXPECT_TRUE(r.passes());
  }
}

TEST(TNormAxioms, MatchesOracleOnFineGrid) {
  const auto g = unit_grid(0.05);
  for (int k = 0; k < 3; ++k)
    for (double a : g)
      for (double b : g) {
        const double v = norms()[k](a, b);
        EXPECT_EQ(v, oracle::tnorm(k, a, b));
        EXPECT_LE(v, std::min(a, b) + kTol);
        // 1-Lipschitz in each argument
        for (double c : g) EXPECT_LE(std::abs(norms()[k](a, c) - v), std::abs(c - b) + kTol);
      }
}

TEST(TNormCustom, AcceptsValidRejectsInvalid) {
  const auto g = unit_grid(0.1);
  const auto drastic_min = TNorm::custom("mymin", [](double a, double b) { return std::min(a, b); }, g);
  EXPECT_EQ(drastic_min.kind(), TNormKind::custom);
  EXPECT_DOUBLE_EQ(drastic_min(0.3, 0.6), 0.3);
  EXPECT_THROW((void)TNorm::custom("mean", [](double a, double b) { return (a + b) / 2; }, g), std::invalid_argument);
}

TEST(TNormTN1, ProductAndLukasiewiczHold) {
  const auto g = unit_grid(0.01);
  ASSERT_EQ(g.size(), 101u);
  const auto pairs = grid_pairs(g);
  ASSERT_EQ(pairs.size(), 10201u);
  EXPECT_TRUE(tn_has_tn1(TNorm::product(), pairs).holds);
  EXPECT_TRUE(tn_has_tn1(TNorm::lukasiewicz(), pairs).holds);
  EXPECT_TRUE(has_tn1(TNorm::product()));
  EXPECT_TRUE(has_tn1(TNorm::lukasiewicz()));
}

TEST(TNormTN1, MinimumFailsAtHalfHalf) {
  const auto pairs = grid_pairs(unit_grid(0.01));
  const auto r = tn_has_tn1(TNorm::minimum(), pairs);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_DOUBLE_EQ(r.witness->first, 0.5);
  EXPECT_DOUBLE_EQ(r.witness->second, 0.5);
  EXPECT_DOUBLE_EQ(r.worst_residual, -0.5);
  EXPECT_FALSE(has_tn1(TNorm::minimum()));
}

TEST(TNormOrder, LukasiewiczProductMinimum) {
  const auto pairs = grid_pairs(unit_grid(0.01));
  EXPECT_TRUE(tn_leq(TNorm::lukasiewicz(), TNorm::product(), pairs).holds);
  EXPECT_TRUE(tn_leq(TNorm::product(), TNorm::minimum(), pairs).holds);
  const auto r = tn_leq(TNorm::minimum(), TNorm::product(), pairs);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_DOUBLE_EQ(r.witness->first, 0.5);
  EXPECT_DOUBLE_EQ(r.witness->second, 0.5);
}
