#include <gtest/gtest.h>

#include "fuzzygh/value_fn.hpp"

using namespace fuzzygh;

TEST(ValueFn, StandardForm) {
  const auto f = ValueFn::standard(3.0);
  EXPECT_DOUBLE_EQ(vf_eval(f, 1.0), 0.25);
  EXPECT_EQ(vf_eval(f, 0.0), 0.0);
  EXPECT_FALSE(f.piecewise_constant());
  EXPECT_TRUE(f.separates());
  EXPECT_TRUE(ValueFn::standard(0.0).is_constant());
  EXPECT_THROW((void)ValueFn::standard(-1.0), std::invalid_argument);
}

TEST(ValueFn, StepIsRightClosed) {
  const auto f = ValueFn::step({2.0}, {0.5, 1.0});
  EXPECT_EQ(vf_eval(f, 2.0), 0.5);
  EXPECT_EQ(vf_eval(f, 1.0), 0.5);
  EXPECT_EQ(vf_eval(f, std::nextafter(2.0, 3.0)), 1.0);
  EXPECT_EQ(vf_eval(f, 0.0), 0.0);
  EXPECT_EQ(f.breakpoints(), std::vector<double>{2.0});
}

TEST(ValueFn, StepValidation) {
  EXPECT_THROW((void)ValueFn::step({5.0}, {0.9, 0.5}), std::invalid_argument);
  EXPECT_THROW((void)ValueFn::step({2.0, 1.0}, {0.1, 0.2, 0.3}), std::invalid_argument);
  EXPECT_THROW((void)ValueFn::step({0.0}, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW((void)ValueFn::step({1.0}, {0.1}), std::invalid_argument);
  EXPECT_THROW((void)ValueFn::step({1.0}, {0.1, 1.2}), std::domain_error);
}

TEST(ValueFn, StationaryAndZero) {
  const auto f = ValueFn::stationary(1.0 / 3.0);
  EXPECT_EQ(vf_eval(f, 1e-9), 1.0 / 3.0);
  EXPECT_EQ(vf_eval(f, 1e9), 1.0 / 3.0);
  EXPECT_EQ(vf_eval(f, 0.0), 0.0);
  EXPECT_FALSE(ValueFn::stationary(1.0).separates());
  EXPECT_EQ(vf_eval(ValueFn::zero(), 5.0), 0.0);
}

TEST(ValueFn, NegativeTimeIsDomainError) {
  EXPECT_THROW((void)vf_eval(ValueFn::standard(1.0), -1.0), std::domain_error);
  EXPECT_THROW((void)vf_eval(ValueFn::stationary(0.5), -0.5), std::domain_error);
}

TEST(ValueFn, ToStepIsExact) {
  auto g = std::make_shared<GluedFn>();
  g->norm = TNorm::product();
  g->split = 1.0;
  g->factor = 0.8;
  g->floor = ValueFn::stationary(0.5);
  g->terms = {{ValueFn::step({3.0}, {0.5, 1.0}), ValueFn::stationary(0.5)}};
  const auto f = ValueFn::glued(g);
  ASSERT_TRUE(f.piecewise_constant());
  const auto s = to_step(f);
  for (double t : {0.1, 0.5, 1.0, 1.5, 3.0, 3.5, 100.0}) EXPECT_DOUBLE_EQ(s(t), f(t)) << t;
  EXPECT_DOUBLE_EQ(f(1.0), 0.5 * 0.5 * 0.8);
  EXPECT_DOUBLE_EQ(f(2.0), 0.5 * 0.5 * 0.8);
  EXPECT_DOUBLE_EQ(f(4.0), 0.5 * 0.8);
  // equal consecutive pieces are merged
  EXPECT_EQ(s.breakpoints(), std::vector<double>{3.0});
  EXPECT_THROW((void)to_step(ValueFn::standard(1.0)), std::invalid_argument);
}

TEST(ValueFn, StepFromBelowNeverExceeds) {
  const auto f = ValueFn::standard(2.0);
  const std::vector<double> grid{0.5, 1.0, 2.0, 4.0};
  const auto s = step_from_below(f, grid);
  for (double t = 0.01; t < 10.0; t *= 1.1) EXPECT_LE(s(t), f(t));
  EXPECT_DOUBLE_EQ(s(1.5), f(1.0));
}

TEST(ValueFn, MonotoneOnSortedGrids) {
  const std::vector<ValueFn> fs{ValueFn::standard(0.7), ValueFn::step({1, 2, 3}, {0.1, 0.1, 0.4, 0.9}),
                                ValueFn::stationary(0.2)};
  for (const auto& f : fs) {
    double prev = 0.0;
    for (double t = 1e-3; t < 1e3; t *= 1.3) {
      EXPECT_GE(f(t), prev);
      prev = f(t);
    }
  }
}

TEST(ValueFn, SameRepresentation) {
  EXPECT_TRUE(same_representation(ValueFn::standard(1.0), ValueFn::standard(1.0)));
  EXPECT_FALSE(same_representation(ValueFn::standard(1.0), ValueFn::stationary(0.5)));
  EXPECT_FALSE(same_representation(ValueFn::step({1}, {0.2, 1}), ValueFn::step({2}, {0.2, 1})));
}
