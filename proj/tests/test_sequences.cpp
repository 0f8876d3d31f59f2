#include <gtest/gtest.h>

#include <random>

#include "fuzzygh/sequences.hpp"
#include "oracles.hpp"

using namespace fuzzygh;

namespace {

FuzzySpace pair_space(double c, const TNorm& n = TNorm::product()) {
  return make_stationary_space({"x1", "x2"}, {{1, c}, {c, 1}}, n);
}

SequenceFamily stationary_family(const std::vector<double>& values, double floor) {
  SequenceFamily f;
  for (double v : values) f.spaces.push_back(pair_space(v));
  f.floor = ValueFn::stationary(floor);
  f.nets = std::vector<std::vector<std::size_t>>(values.size(), {0, 1});
  return f;
}

SequenceFamily standard_family(const std::vector<oracle::Matrix>& ms, double K) {
  SequenceFamily f;
  for (const auto& m : ms) f.spaces.push_back(make_standard_space(default_labels(m.size()), DistanceMatrix(m), TNorm::product()));
  f.floor = ValueFn::standard(K);
  return f;
}

}  // namespace

TEST(FloorDiv, MatchesOracle) {
  EXPECT_EQ(exact_floor_div(0.5, 1.0 / 30), 15);
  EXPECT_EQ(exact_floor_div(1.0 / 3, 1.0 / 30), oracle::floor_div(1.0 / 3, 1.0 / 30));
  EXPECT_EQ(exact_floor_div(1.0 / 3, 1.0 / 30), 9);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100000; ++k) {
    const double a = u(rng), b = 0.001 + u(rng);
    ASSERT_EQ(exact_floor_div(a, b), oracle::floor_div(a, b)) << a << " " << b;
  }
}

TEST(DiameterFloor, Examples) {
  const auto nc = gen_no_cauchy_family(8);
  EXPECT_TRUE(check_diameter_floor(nc).pass);
  std::mt19937_64 rng(2);
  std::vector<oracle::Matrix> ms;
  for (int k = 0; k < 6; ++k) ms.push_back(oracle::random_metric(rng, 3, 0.1, 2.5));
  EXPECT_TRUE(check_diameter_floor(standard_family(ms, 5.0)).pass);

  SequenceFamily growing;
  for (int n = 1; n <= 30; ++n)
    growing.spaces.push_back(make_standard_space({"a", "b"}, DistanceMatrix({{0.0, double(n)}, {double(n), 0.0}}), TNorm::product()));
  growing.floor = ValueFn::stationary(0.05);
  const auto r = check_diameter_floor(growing, GridSpec::explicit_values({1.0}));
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().space, 19u);  // 1/(1+20) < 0.05

  SequenceFamily none = nc;
  none.floor.reset();
  EXPECT_THROW((void)check_diameter_floor(none), std::invalid_argument);
}

TEST(Ratio, StationaryAndStandardPass) {
  const auto st = stationary_family({0.3, 0.6, 0.45}, 0.3);
  const auto r = check_ratio_condition(st, 1.0, 0.1);
  EXPECT_TRUE(r.general_pass && r.product_pass);

  std::mt19937_64 rng(3);
  std::vector<oracle::Matrix> ms;
  for (int k = 0; k < 5; ++k) ms.push_back(oracle::random_metric(rng, 3, 0.1, 2.5));
  auto fam = standard_family(ms, 5.0);
  fam.nets = std::vector<std::vector<std::size_t>>(5, {0, 1, 2});
  const auto q = check_ratio_condition(fam, 1.0, 0.3);
  EXPECT_TRUE(q.general_pass && q.product_pass);
  EXPECT_GT(q.instances, 0u);
}

TEST(Ratio, NoCauchyFails) {
  const auto nc = gen_no_cauchy_family(6);
  const auto r = check_ratio_condition(nc, 0.5, 0.1);
  EXPECT_FALSE(r.product_pass);
  ASSERT_TRUE(r.product_witness);
  const auto& w = *r.product_witness;
  // s lies between the two breakpoints: M_n(s) still low, M_m(s) already 1
  EXPECT_GT(w.s, double(std::min(w.n, w.m) + 1));
  EXPECT_LE(w.s, double(std::max(w.n, w.m) + 1));
  EXPECT_LT(w.lhs, w.rhs);
}

TEST(Ratio, ZeroDenominator) {
  // M_m vanishes at t but not beyond it
  SequenceFamily f;
  f.spaces = {pair_space(0.1), make_step_space({"x1", "x2"}, {{0, 1, ValueFn::step({1}, {0.0, 0.5})}}, TNorm::product())};
  f.nets = std::vector<std::vector<std::size_t>>(2, {0, 1});
  EXPECT_THROW((void)check_ratio_condition(f, 1.0, 0.1), std::domain_error);
}

TEST(Pigeonhole, SixStationarySpaces) {
  const std::vector<double> values{0.5, 0.5, 0.9, 0.5, 0.9, 0.5};
  const auto f = stationary_family(values, 0.4);
  const auto tab = pigeonhole_subsequence(f, 1.0, 0.3);
  EXPECT_DOUBLE_EQ(tab.cell_width, 0.12);
  EXPECT_EQ(tab.selected, (std::vector<std::size_t>{0, 1, 3, 5}));
  EXPECT_EQ(tab.matrices[0][1], oracle::floor_div(0.5, 0.4 * 0.3));
  EXPECT_EQ(tab.matrices[2][1], oracle::floor_div(0.9, 0.4 * 0.3));
  EXPECT_EQ(tab.matrices[0][1], 4);
  EXPECT_EQ(tab.matrices[2][1], 7);
  // soundness within every group
  for (const auto& g : tab.groups)
    for (auto n : g)
      for (auto m : g) EXPECT_LT(std::abs(values[n] - values[m]), tab.cell_width);
}

TEST(Pigeonhole, IdenticalAndTies) {
  const auto same = stationary_family({0.7, 0.7, 0.7}, 0.5);
  EXPECT_EQ(pigeonhole_subsequence(same, 1.0, 0.2).selected.size(), 3u);
  const auto tie = stationary_family({0.9, 0.5, 0.9, 0.5}, 0.4);
  EXPECT_EQ(pigeonhole_subsequence(tie, 1.0, 0.3).selected, (std::vector<std::size_t>{0, 2}));
  auto zero = same;
  zero.floor = ValueFn::zero();
  EXPECT_THROW((void)pigeonhole_subsequence(zero, 1.0, 0.2), std::domain_error);
}

TEST(Pigeonhole, NoCauchySeparatesParities) {
  const auto nc = gen_no_cauchy_family(6);
  const auto tab = pigeonhole_subsequence(nc, 0.5, 0.1);
  EXPECT_EQ(tab.matrices[1][1], oracle::floor_div(0.5, 1.0 / 3 * 0.1));
  EXPECT_EQ(tab.matrices[0][1], oracle::floor_div(1.0 / 3, 1.0 / 3 * 0.1));
  EXPECT_EQ(tab.matrices[1][1], 15);
  EXPECT_EQ(tab.matrices[0][1], 9);
  ASSERT_EQ(tab.groups.size(), 2u);
  EXPECT_EQ(tab.groups[0], (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(tab.groups[1], (std::vector<std::size_t>{1, 3, 5}));
}

TEST(Certify, StationaryGroup) {
  const auto f = stationary_family({0.5, 0.5, 0.9, 0.5, 0.9, 0.5}, 0.4);
  const auto tab = pigeonhole_subsequence(f, 1.0, 0.3);
  const auto c = certify_group(f, tab.selected, 1.0, 0.3);
  EXPECT_TRUE(c.all_ok);
  EXPECT_EQ(c.pairs.size(), 6u);
  for (const auto& p : c.pairs) EXPECT_GT(p.hausdorff, 0.49);
  EXPECT_TRUE(certify_group(f, {2}, 1.0, 0.3).pairs.empty());
  // a mixed group is reported per pair, not thrown
  const auto bad = certify_group(f, {0, 2}, 1.0, 0.1);
  EXPECT_FALSE(bad.all_ok);
  EXPECT_FALSE(bad.pairs.front().error.empty());
}

TEST(Diagonal, Selectors) {
  const LevelSelector identity = [](double, double, const std::vector<std::size_t>& prev) { return prev; };
  EXPECT_EQ(diagonal_subsequence(10, identity, 5), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(diagonal_subsequence(10, identity, 0).empty());
  const LevelSelector halve = [](double, double, const std::vector<std::size_t>& prev) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < prev.size(); k += 2) out.push_back(prev[k]);
    return out;
  };
  // level n keeps k * 2^n, so its n-th element is (n - 1) * 2^n
  EXPECT_EQ(diagonal_subsequence(64, halve, 4), (std::vector<std::size_t>{0, 4, 16, 48}));
  const LevelSelector bad = [](double, double, const std::vector<std::size_t>& prev) {
    return std::vector<std::size_t>(prev.rbegin(), prev.rend());
  };
  EXPECT_THROW((void)diagonal_subsequence(5, bad, 2), std::invalid_argument);
  std::vector<double> seen;
  const LevelSelector record = [&](double t, double eps, const std::vector<std::size_t>& prev) {
    seen.push_back(t);
    EXPECT_EQ(t, eps);
    return prev;
  };
  (void)diagonal_subsequence(5, record, 3);
  EXPECT_EQ(seen, (std::vector<double>{1.0, 0.5, 1.0 / 3}));
}

TEST(Stationary, Hypotheses) {
  SequenceFamily f;
  for (double v : {0.5, 0.52, 0.9, 0.5, 0.52, 0.9, 0.5}) f.spaces.push_back(pair_space(v));
  const auto r = check_stationary_hypotheses(f, 0.3);
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.floor, 0.5);
  ASSERT_TRUE(r.table);
  EXPECT_EQ(r.table->selected, (std::vector<std::size_t>{0, 1, 3, 4, 6}));

  auto mixed = f;
  mixed.spaces.push_back(make_standard_space({"a", "b"}, DistanceMatrix({{0, 1}, {1, 0}}), TNorm::product()));
  const auto m = check_stationary_hypotheses(mixed, 0.3);
  EXPECT_FALSE(m.cond1_stationary);
  EXPECT_FALSE(m.pass);

  auto zero = f;
  zero.spaces.push_back(pair_space(0.0));
  EXPECT_FALSE(check_stationary_hypotheses(zero, 0.3).cond2);

  SequenceFamily minimum;
  minimum.spaces = {pair_space(0.5, TNorm::minimum())};
  EXPECT_FALSE(check_stationary_hypotheses(minimum, 0.2).cond1_tn1);
}

TEST(Bridge, BoundedFamiliesPass) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<DistanceMatrix> ms;
    for (int k = 0; k < 4; ++k) ms.emplace_back(oracle::random_metric(rng, 2 + (trial + k) % 4, 0.1, 2.5));
    const auto r = standard_bridge_check(ms, 5.0);
    EXPECT_TRUE(r.floor.pass);
    EXPECT_TRUE(r.cover_pass);
    EXPECT_TRUE(r.ratio_pass);
  }
  const DistanceMatrix one({{0, 2, 3}, {2, 0, 1.5}, {3, 1.5, 0}});
  EXPECT_TRUE(standard_bridge_check({one, one, one}, 3.0).pass());
}

TEST(Bridge, GrowingDiametersFailOnlyTheFloor) {
  std::vector<DistanceMatrix> ms;
  for (int n = 1; n <= 10; ++n) ms.emplace_back(std::vector<std::vector<double>>{{0.0, double(n)}, {double(n), 0.0}});
  const auto r = standard_bridge_check(ms, 5.0);
  EXPECT_FALSE(r.floor.pass);
  EXPECT_TRUE(r.cover_pass);
  EXPECT_TRUE(r.ratio_pass);
  EXPECT_EQ(r.diameter_violations, (std::vector<std::size_t>{5, 6, 7, 8, 9}));
}

TEST(NoCauchy, GeneratorAndVerifier) {
  const auto f = gen_no_cauchy_family(6);
  ASSERT_EQ(f.spaces.size(), 6u);
  for (const auto& s : f.spaces) EXPECT_TRUE(check_axioms(s, default_grid()).passes());
  EXPECT_EQ(f.spaces[1](0, 1, 2.0), 0.5);
  EXPECT_EQ(f.spaces[2](0, 1, 3.0), 1.0 / 3);
  EXPECT_EQ(f.spaces[2](0, 1, 3.5), 1.0);
  EXPECT_EQ(uniform_cover_bound(f.spaces, 0.1, 0.5), 2u);
  EXPECT_THROW((void)gen_no_cauchy_family(1), std::invalid_argument);

  const auto r = verify_no_cauchy(f);
  EXPECT_FALSE(r.matched_inequality_holds);
  EXPECT_DOUBLE_EQ(r.matched_rhs, 0.405);
  EXPECT_TRUE(r.unique_net);
  EXPECT_TRUE(r.contradiction_confirmed());
  ASSERT_EQ(r.cross_parity.size(), 2u);
  for (const auto& p : r.cross_parity) {
    EXPECT_LE(p.upper, 0.8265);
    EXPECT_GE(p.upper, 0.8165);
    EXPECT_GE(p.lower, 1.0 / 3 - 1e-15);
  }
  for (const auto& p : r.same_parity) EXPECT_TRUE(p.isometric_at_t);
}
