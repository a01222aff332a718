#include <gtest/gtest.h>

#include "circlt/combinatorics.hpp"

using namespace circlt;

namespace {

Rational rat(long a, long b = 1) { return Rational(a, b); }

double density_gap(std::int64_t p, std::int64_t s, std::int64_t n) {
  return std::abs(static_cast<double>(Rational(lattice_slice(p, s, n).density - f_density(p, s))));
}

TEST(FDensity, SmallValues) {
  EXPECT_EQ(f_density(2, 0), rat(0));
  EXPECT_EQ(f_density(2, 1), rat(1));
  EXPECT_EQ(f_density(3, 1), rat(1, 2));
  EXPECT_EQ(f_density(3, 2), rat(1, 2));
  EXPECT_EQ(f_density(4, 1), rat(1, 6));
  EXPECT_EQ(f_density(4, 2), rat(2, 3));
}

TEST(FDensity, RangeChecks) {
  EXPECT_THROW(f_density(3, 3), Refusal);
  EXPECT_THROW(f_density(3, -1), Refusal);
  EXPECT_THROW(f_density(1, 0), Refusal);
}

TEST(FDensity, NormalizedExactly) {
  for (int p = 2; p <= 10; ++p) {
    Rational total = 0;
    for (int s = 0; s < p; ++s) {
      EXPECT_GE(f_density(p, s), 0);
      total += f_density(p, s);
    }
    EXPECT_EQ(total, rat(1)) << "p=" << p;
  }
}

TEST(FDensity, ReflectionSymmetry) {
  for (int p = 2; p <= 8; ++p)
    for (int s = 1; s <= p - 1; ++s) EXPECT_EQ(f_density(p, s), f_density(p, p - s)) << p << "," << s;
}

// The leading-order slice density at finite n decides the normalization of f:
// |A_{3,1}|/n^2 at n = 500 sits at 1/2 (with the 1/(p-1)! factor) rather than
// at the unnormalized alternating sum, which equals 1 for p = 3, s = 1.
TEST(FDensity, NormalizationDecidedByBruteForce) {
  const std::int64_t n = 500;
  for (std::int64_t s : {1, 2}) {
    const auto count = count_slice_bruteforce(3, s, n, 200'000'000);
    const double density = static_cast<double>(Rational(count, BigInt(n * n)));
    const double normalized = static_cast<double>(f_density(3, s));
    const double unnormalized = normalized * 2;  // times (p-1)!
    EXPECT_NEAR(density, normalized, 0.005);
    EXPECT_GT(std::abs(density - unnormalized), 0.4);
  }
}

TEST(CountSlice, Examples) {
  EXPECT_EQ(count_slice_exact(2, 1, 5), 4);
  EXPECT_EQ(count_slice_exact(3, 1, 3), 7);
  for (std::int64_t n : {1, 2, 3, 10, 1000}) EXPECT_EQ(count_slice_exact(2, 0, n), 1);
  EXPECT_EQ(count_slice_bruteforce(1, 0, 17), 1);
  EXPECT_EQ(count_slice_bruteforce(4, 2, 2), 1);
  EXPECT_EQ(count_slice_bruteforce(4, 3, 2), 0);
  EXPECT_EQ(count_slice_bruteforce(3, 1, 3), 7);
}

TEST(CountSlice, ArgumentChecks) {
  EXPECT_THROW(count_slice_exact(0, 0, 3), Refusal);
  EXPECT_THROW(count_slice_exact(3, 3, 3), Refusal);
  EXPECT_THROW(count_slice_exact(3, 1, 0), Refusal);
  EXPECT_THROW(count_slice_bruteforce(5, 1, 100), BudgetExceeded);
  EXPECT_THROW(count_slice_distinct(6, 1, 100), BudgetExceeded);
}

TEST(CountSlice, ExactMatchesBruteForceSmall) {
  for (std::int64_t p = 1; p <= 4; ++p)
    for (std::int64_t n = 1; n <= 12; ++n)
      for (std::int64_t s = 0; s < p; ++s)
        EXPECT_EQ(count_slice_exact(p, s, n), count_slice_bruteforce(p, s, n)) << p << "," << s << "," << n;
}

TEST(CountSlice, ZeroLevelIsSingleton) {
  for (std::int64_t p = 1; p <= 7; ++p)
    for (std::int64_t n : {1, 2, 9, 50}) EXPECT_EQ(count_slice_exact(p, 0, n), 1);
}

TEST(CountSlice, LevelsPartitionTheResidueClass) {
  for (std::int64_t p = 1; p <= 6; ++p) {
    for (std::int64_t n = 1; n <= 50; ++n) {
      BigInt total = 0;
      for (std::int64_t s = 0; s < p; ++s) total += count_slice_exact(p, s, n);
      EXPECT_EQ(total, detail::big_pow(n, p - 1)) << p << "," << n;
    }
  }
}

TEST(CountSlice, ExceedsSixtyFourBits) {
  // C(s n + p - 1, p - 1) overflows 64-bit arithmetic here.
  const auto c = count_slice_exact(12, 6, 100'000);
  EXPECT_GT(c, BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(CountSliceDistinct, Examples) {
  EXPECT_EQ(count_slice_distinct(2, 1, 5), 4);
  EXPECT_EQ(count_slice_distinct(2, 1, 4), 2);
  EXPECT_EQ(count_slice_distinct(3, 1, 3), 6);
  EXPECT_EQ(count_slice_distinct(3, 0, 10), 0);
}

// Leading-order convergence |A_{p,s}|/n^{p-1} -> f_p(s): the gap times n
// settles to a constant, so the gap is at most C/n with C fitted at n = 100.
// The ratio between successive doublings tends to 1/2 from either side.
TEST(DensityConvergence, GapDecaysLikeOneOverN) {
  for (std::int64_t p = 2; p <= 5; ++p) {
    for (std::int64_t s = 1; s < p; ++s) {
      const double c_fit = density_gap(p, s, 100) * 100;
      double previous = density_gap(p, s, 100);
      for (std::int64_t n : {200, 400, 800}) {
        const double gap = density_gap(p, s, n);
        EXPECT_LE(gap, 1.05 * c_fit / static_cast<double>(n)) << p << "," << s << "," << n;
        EXPECT_LE(gap / previous, 0.51) << p << "," << s << "," << n;
        previous = gap;
      }
    }
  }
}

// Tuples with a repeated coordinate have vanishing density, at rate 1/n.
TEST(DensityConvergence, RepeatedCoordinatesNegligible) {
  for (std::int64_t p : {3, 4}) {
    for (std::int64_t s = 1; s < p; ++s) {
      auto excess = [&](std::int64_t n) {
        return static_cast<double>(
            Rational(count_slice_exact(p, s, n) - count_slice_distinct(p, s, n), detail::big_pow(n, p - 1)));
      };
      const double e200 = excess(200), e400 = excess(400);
      EXPECT_GT(e200, 0.0);
      EXPECT_LE(e400 / e200, 0.51) << p << "," << s;
      EXPECT_LT(e400, 5.0 / 400) << p << "," << s;
    }
  }
}

TEST(LimitingVariance, Examples) {
  EXPECT_EQ(limiting_variance(TestPolynomial::monomial(2)).exact, rat(2));
  EXPECT_EQ(limiting_variance(TestPolynomial::monomial(3)).exact, rat(6));
  const auto both = limiting_variance(TestPolynomial::from_dense({0, 0, 1, 1}));
  EXPECT_EQ(both.exact, rat(8));
  EXPECT_EQ(both.value, 8.0);
  // a_l^2 l! for a = (0, 0, 0.5, 0, -2): 0.25*2 + 4*24
  EXPECT_EQ(limiting_variance(TestPolynomial::from_dense({0, 0, 0.5, 0, -2})).exact, rat(193, 2));
}

TEST(ExactRational, RepresentsDoublesExactly) {
  EXPECT_EQ(exact_rational(0.5), rat(1, 2));
  EXPECT_EQ(exact_rational(-3.0), rat(-3));
  EXPECT_EQ(exact_rational(0.0), rat(0));
  for (double v : {0.1, 1e-300, 123456.789, -7.25e10}) EXPECT_EQ(static_cast<double>(exact_rational(v)), v);
}

TEST(GaussianMoment, Examples) {
  EXPECT_EQ(gaussian_central_moment(2, 1.7), 1.7);
  EXPECT_DOUBLE_EQ(gaussian_central_moment(4, 2.0), 12.0);
  EXPECT_EQ(gaussian_central_moment(3, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(gaussian_central_moment(8, 1.0), 105.0);
  EXPECT_THROW(gaussian_central_moment(0, 1.0), Refusal);
}

}  // namespace
