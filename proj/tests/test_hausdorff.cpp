#include <gtest/gtest.h>

#include <random>

#include "fuzzygh/hausdorff.hpp"
#include "oracles.hpp"

using namespace fuzzygh;

namespace {

FuzzySpace line(std::vector<double> xs) {
  std::vector<std::vector<double>> d(xs.size(), std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) d[i][j] = std::abs(xs[i] - xs[j]);
  return make_standard_space(default_labels(xs.size()), DistanceMatrix(d), TNorm::product(), "line");
}

FuzzySpace pair_space(double c) {
  return make_stationary_space({"x1", "x2"}, {{1, c}, {c, 1}}, TNorm::product());
}

}  // namespace

TEST(PointToSet, Basics) {
  const auto s = line({0, 4});
  EXPECT_EQ(point_to_set(s, 0, Subset(s, {0, 1}), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(point_to_set(s, 0, Subset(s, {1}), 1.0), 0.2);
  const auto p = pair_space(0.5);
  EXPECT_EQ(point_to_set(p, 0, Subset(p, {1}), 123.0), 0.5);
  EXPECT_THROW(Subset(s, {}), std::domain_error);
  EXPECT_THROW(Subset(s, {2}), std::out_of_range);
}

TEST(HausdorffFuzzy, Examples) {
  const auto s = line({0, 4});
  EXPECT_EQ(hausdorff_fuzzy(s, Subset::all(s), Subset::all(s), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(hausdorff_fuzzy(s, Subset(s, {0}), Subset(s, {0, 1}), 1.0), 0.2);
  const auto p = pair_space(0.3);
  EXPECT_EQ(hausdorff_fuzzy(p, Subset(p, {0}), Subset(p, {0, 1}), 2.0), 0.3);
}

TEST(HausdorffFuzzy, StandardBridgeAgainstClassicalOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto m = oracle::random_metric(rng, n);
    const auto s = make_standard_space(default_labels(n), DistanceMatrix(m), TNorm::product());
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2) a.push_back(i);
      if (rng() % 2) b.push_back(i);
    }
    if (a.empty()) a.push_back(0);
    if (b.empty()) b.push_back(n - 1);
    const double dh = oracle::hausdorff(m, a, b);
    for (double t : {0.01, 1.0, 30.0}) {
      const double h = hausdorff_fuzzy(s, Subset(s, a), Subset(s, b), t);
      EXPECT_NEAR(h, t / (t + dh), 1e-12);
      EXPECT_EQ(h, hausdorff_fuzzy(s, Subset(s, b), Subset(s, a), t));
      EXPECT_LE(hausdorff_fuzzy(s, Subset(s, a), Subset(s, b), t / 2), h);
    }
  }
}

TEST(HausdorffConditions, StrictThreshold) {
  const auto p = pair_space(0.5);
  const Subset a(p, {0}), b(p, {1});
  EXPECT_TRUE(hausdorff_conditions(p, a, a, 1.0, 0.01).holds);
  const auto no = hausdorff_conditions(p, a, b, 1.0, 0.4);
  EXPECT_FALSE(no.holds);
  EXPECT_EQ(no.uncovered_in_a, std::vector<std::size_t>{0});
  EXPECT_EQ(no.uncovered_in_b, std::vector<std::size_t>{1});
  EXPECT_TRUE(hausdorff_conditions(p, a, b, 1.0, 0.6).holds);
  // boundary: H = 1 - eps exactly is not enough
  EXPECT_FALSE(hausdorff_conditions(p, a, b, 1.0, 0.5).holds);
  EXPECT_THROW((void)hausdorff_conditions(p, a, b, 1.0, 1.0), std::domain_error);
}

TEST(HausdorffConditions, ConsistentWithValue) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_metric(rng, 4, 0.1, 3.0);
    const auto s = make_standard_space(default_labels(4), DistanceMatrix(m), TNorm::product());
    const Subset a(s, {0, 1}), b(s, {2, 3});
    const double t = 0.1 + 3 * u(rng), eps = 0.05 + 0.9 * u(rng);
    const double h = hausdorff_fuzzy(s, a, b, t);
    const bool holds = hausdorff_conditions(s, a, b, t, eps).holds;
    if (h > 1 - eps) EXPECT_TRUE(holds);
    if (holds) EXPECT_GE(h, 1 - eps);
  }
}
