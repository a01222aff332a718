#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "circlt/error.hpp"
#include "circlt/polynomial.hpp"

namespace circlt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline BigInt binomial(const BigInt& a, std::int64_t b) {
  if (b < 0 || a < 0 || a < b) return 0;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;
  }
  return result;
}

inline BigInt factorial(std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

inline BigInt big_pow(const BigInt& base, std::int64_t e) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

inline void check_slice_args(std::int64_t p, std::int64_t s, std::int64_t n) {
  if (p < 1) throw Refusal("lattice slices need p >= 1");
  if (n < 1) throw Refusal("lattice slices need n >= 1");
  if (s < 0 || s > p - 1) throw Refusal("slice level s must lie in [0, p-1]");
}

inline void check_budget(const char* what, std::int64_t n, std::int64_t exponent, std::uint64_t budget) {
  const double required = std::pow(static_cast<double>(n), static_cast<double>(exponent));
  if (required > static_cast<double>(budget)) throw BudgetExceeded(what, required, budget);
}

}  // namespace detail

/// Exact value of a finite double as a rational.
inline Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw Refusal("cannot convert a non-finite value to a rational");
  if (v == 0.0) return 0;
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  const BigInt two_pow = BigInt(1) << std::abs(exponent);
  return exponent >= 0 ? Rational(r * two_pow) : Rational(r / two_pow);
}

/// Euler-Frobenius density f_p(s) = (1/(p-1)!) sum_{k=0}^s (-1)^k C(p,k) (s-k)^{p-1},
/// the limit of |A_{p,s}| / n^{p-1}.
inline Rational f_density(std::int64_t p, std::int64_t s) {
  if (p < 2) throw Refusal("f_density requires p >= 2");
  if (s < 0 || s > p - 1) throw Refusal("f_density requires 0 <= s <= p-1");
  BigInt numerator = 0;
  for (std::int64_t k = 0; k <= s; ++k) {
    BigInt term = detail::binomial(p, k) * detail::big_pow(s - k, p - 1);
    numerator += (k % 2 == 0) ? term : BigInt(-term);
  }
  return Rational(numerator, detail::factorial(p - 1));
}

/// |A_{p,s}|: tuples in {0..n-1}^p summing to s*n, by inclusion-exclusion over
/// the coordinates that exceed n-1.
inline BigInt count_slice_exact(std::int64_t p, std::int64_t s, std::int64_t n) {
  detail::check_slice_args(p, s, n);
  BigInt total = 0;
  for (std::int64_t k = 0; k <= p; ++k) {
    const BigInt top = BigInt(s * n) - BigInt(k * n) + (p - 1);
    if (top < p - 1) break;
    BigInt term = detail::binomial(p, k) * detail::binomial(top, p - 1);
    total += (k % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

/// Direct enumeration of all n^p tuples.
inline BigInt count_slice_bruteforce(std::int64_t p, std::int64_t s, std::int64_t n,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_slice_args(p, s, n);
  detail::check_budget("count_slice_bruteforce", n, p, budget);
  const std::int64_t target = s * n;
  std::uint64_t count = 0;
  auto visit = [&](auto&& self, std::int64_t depth, std::int64_t sum) -> void {
    if (depth == p) {
      count += (sum == target) ? 1u : 0u;
      return;
    }
    for (std::int64_t i = 0; i < n; ++i) self(self, depth + 1, sum + i);
  };
  visit(visit, 0, 0);
  return count;
}

/// |A'_{p,s}|: tuples of A_{p,s} whose coordinates are pairwise distinct. The
/// first p-1 coordinates are enumerated; the last is forced by the sum.
inline BigInt count_slice_distinct(std::int64_t p, std::int64_t s, std::int64_t n,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_slice_args(p, s, n);
  detail::check_budget("count_slice_distinct", n, p - 1, budget);
  const std::int64_t target = s * n;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  auto visit = [&](auto&& self, std::int64_t depth, std::int64_t sum) -> void {
    if (depth == p - 1) {
      const std::int64_t last = target - sum;
      if (last >= 0 && last < n && !used[static_cast<std::size_t>(last)]) ++count;
      return;
    }
    for (std::int64_t i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      used[static_cast<std::size_t>(i)] = 1;
      self(self, depth + 1, sum + i);
      used[static_cast<std::size_t>(i)] = 0;
    }
  };
  visit(visit, 0, 0);
  return count;
}

struct LatticeSliceCount {
  std::int64_t p = 0, s = 0, n = 0;
  BigInt count;
  Rational density;  // count / n^{p-1}
};

inline LatticeSliceCount lattice_slice(std::int64_t p, std::int64_t s, std::int64_t n) {
  LatticeSliceCount out{p, s, n, count_slice_exact(p, s, n), 0};
  out.density = Rational(out.count, detail::big_pow(n, p - 1));
  return out;
}

struct LimitingVariance {
  Rational exact;
  double value = 0;
};

/// sigma^2 = sum_l a_l^2 l! sum_s f_l(s), evaluated in exact arithmetic from the
/// binary values of the coefficients.
inline LimitingVariance limiting_variance(const TestPolynomial& poly) {
  Rational total = 0;
  for (int l = 2; l <= poly.degree(); ++l) {
    const double a = poly.coefficient(l);
    if (a == 0.0) continue;
    Rational density_sum = 0;
    for (int s = 0; s <= l - 1; ++s) density_sum += f_density(l, s);
    const Rational ar = exact_rational(a);
    total += ar * ar * Rational(detail::factorial(l)) * density_sum;
  }
  return {total, static_cast<double>(total)};
}

/// Central moment of N(0, variance): zero for odd order, (2k)!/(k! 2^k) variance^k for order 2k.
inline double gaussian_central_moment(int order, double variance) {
  if (order < 1) throw Refusal("gaussian_central_moment requires order >= 1");
  if (!(variance > 0.0)) throw Refusal("gaussian_central_moment requires a positive variance");
  if (order % 2 == 1) return 0.0;
  // (2k)!/(k! 2^k) = (2k-1)!!
  double double_factorial = 1;
  for (int j = order - 1; j > 1; j -= 2) double_factorial *= j;
  return double_factorial * std::pow(variance, order / 2);
}

}  // namespace circlt
