#include <gtest/gtest.h>

#include <random>

#include "circlt/statistics.hpp"

using namespace circlt;

namespace {

TEST(PairwiseSum, MatchesExactSumOfIntegers) {
  std::vector<double> v(10'001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 10'000.0 * 10'001.0 / 2);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(Moments, ConstantSamples) {
  const std::vector<double> v(50, 3.25);
  for (double m : central_moments(v, 8)) EXPECT_EQ(m, 0.0);
  for (double m : standardized_moments(v, 8)) EXPECT_EQ(m, 0.0);
  EXPECT_EQ(sample_variance(v), 0.0);
}

TEST(Moments, KnownSample) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto c = central_moments(v, 4);
  EXPECT_NEAR(c[0], 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c[1], 1.25);
  EXPECT_NEAR(c[2], 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c[3], (2 * 1.5 * 1.5 * 1.5 * 1.5 + 2 * 0.5 * 0.5 * 0.5 * 0.5) / 4);
  EXPECT_DOUBLE_EQ(sample_variance(v), 5.0 / 3.0);
}

TEST(ShapeErrors, GaussianReference) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::vector<double> v(200'000);
  for (auto& x : v) x = normal(rng);
  const auto se = shape_standard_errors(v);
  const double m = static_cast<double>(v.size());
  EXPECT_NEAR(se.skewness, std::sqrt(6 / m), 0.05 * std::sqrt(6 / m));
  EXPECT_NEAR(se.kurtosis, std::sqrt(24 / m), 0.1 * std::sqrt(24 / m));
}

TEST(KsDistance, SinglePointAtZero) { EXPECT_DOUBLE_EQ(ks_distance(std::vector<double>{0.0}, 1.0), 0.5); }

TEST(KsDistance, FarTail) {
  const std::vector<double> v(100, 10.0);
  EXPECT_NEAR(ks_distance(v, 1.0), 1.0, 1e-12);
}

TEST(KsDistance, TargetNormalDraws) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, std::sqrt(2.0));
  std::vector<double> v(10'000);
  for (auto& x : v) x = normal(rng);
  EXPECT_LT(ks_distance(v, 2.0), 0.02);
}

TEST(KsDistance, Refusals) {
  EXPECT_THROW(ks_distance(std::vector<double>{1.0}, 0.0), Refusal);
  EXPECT_THROW(ks_distance(std::vector<double>{}, 1.0), Refusal);
}

TEST(KsDistance, AlwaysInUnitInterval) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(1 + t);
    for (auto& x : v) x = u(rng);
    const double d = ks_distance(v, 0.5 + t);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
  }
}

}  // namespace
