#include <gtest/gtest.h>

#include <random>

#include "fuzzygh/covering.hpp"
#include "oracles.hpp"

using namespace fuzzygh;

namespace {

FuzzySpace pair_space(double c) {
  return make_stationary_space({"x1", "x2"}, {{1, c}, {c, 1}}, TNorm::product());
}

FuzzySpace stationary_clique(std::size_t n, double c) {
  std::vector<std::vector<double>> v(n, std::vector<double>(n, c));
  return make_stationary_space(default_labels(n), v, TNorm::product());
}

}  // namespace

TEST(Net, TwoPointStationary) {
  const auto s = pair_space(0.5);
  const auto net = find_net(s, 0.5, 0.1);
  EXPECT_EQ(net.indices.size(), 2u);
  EXPECT_TRUE(net.minimal);
  EXPECT_TRUE(verify_certificate(s, net));
  const auto coarse = find_net(s, 0.5, 0.6);
  EXPECT_EQ(coarse.indices, std::vector<std::size_t>{0});
  const auto one = make_stationary_space({"x"}, {{1}}, TNorm::product());
  EXPECT_EQ(find_net(one, 1.0, 0.5).indices.size(), 1u);
}

TEST(Net, ArgumentChecks) {
  const auto s = pair_space(0.5);
  EXPECT_THROW((void)find_net(s, 0.0, 0.1), std::domain_error);
  EXPECT_THROW((void)find_net(s, 1.0, 1.0), std::domain_error);
}

TEST(Cover, LineStrictBoundary) {
  const auto s = make_standard_space(default_labels(4),
                                     DistanceMatrix({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}}),
                                     TNorm::product());
  EXPECT_EQ(cover_number(s, 0.5, 1.0).cover_number, 4u);
  // radius eps t / (1 - eps) = 1.5 > 1 covers neighbours
  EXPECT_EQ(cover_number(s, 0.6, 1.0).cover_number, 2u);
  EXPECT_EQ(cover_number(s, 0.999, 1.0).cover_number, 1u);
}

TEST(Cover, UniformBound) {
  std::vector<FuzzySpace> singles(3, make_stationary_space({"x"}, {{1}}, TNorm::product()));
  EXPECT_EQ(uniform_cover_bound(singles, 0.3, 1.0), 1u);
  std::vector<FuzzySpace> mixed;
  for (std::size_t n = 1; n <= 5; ++n) mixed.push_back(stationary_clique(n, 0.9));
  EXPECT_EQ(uniform_cover_bound(mixed, 0.05, 1.0), 5u);
  EXPECT_THROW((void)uniform_cover_bound({}, 0.1, 1.0), std::invalid_argument);
}

TEST(Cover, StandardTranslationMatchesMetricOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto m = oracle::random_metric(rng, n, 0.1, 4.0);
    const auto s = make_standard_space(default_labels(n), DistanceMatrix(m), TNorm::product());
    for (double t : {0.5, 1.0, 2.0})
      for (double eps : {0.1, 0.3, 0.5, 0.8}) {
        const double r = eps * t / (1 - eps);
        EXPECT_EQ(cover_number(s, eps, t).cover_number, oracle::metric_cover(m, r)) << trial;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (std::abs(m[x][y] - r) > 1e-9) EXPECT_EQ(in_ball(s, x, y, eps, t), m[x][y] < r);
      }
  }
}

TEST(Cover, MonotoneAndGreedyDominates) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto m = oracle::random_metric(rng, n, 0.1, 4.0);
    const auto s = make_standard_space(default_labels(n), DistanceMatrix(m), TNorm::product());
    std::size_t prev = n + 1;
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto c = cover_number(s, eps, 1.0).cover_number;
      EXPECT_LE(c, prev);
      prev = c;
      const auto greedy = find_net(s, 1.0, eps, 0);
      EXPECT_FALSE(greedy.minimal);
      EXPECT_TRUE(verify_certificate(s, greedy));
      EXPECT_GE(greedy.indices.size(), c);
    }
    EXPECT_GE(cover_number(s, 0.3, 0.5).cover_number, cover_number(s, 0.3, 2.0).cover_number);
  }
}
