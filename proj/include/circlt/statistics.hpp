#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "circlt/error.hpp"

namespace circlt {

/// Pairwise (cascade) summation in index order. Deterministic for a given input
/// order, with O(log n) error growth.
template <class T>
T pairwise_sum(std::span<const T> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    T acc{0};
    for (const auto& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(std::span<const double>(values));
}

inline double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return pairwise_sum(values) / static_cast<double>(values.size());
}

/// Unbiased sample variance (divisor m - 1).
inline double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(), [mu](double v) { return (v - mu) * (v - mu); });
  return pairwise_sum(std::span<const double>(sq)) / static_cast<double>(values.size() - 1);
}

/// Central sample moments of orders 1..max_order (divisor m). Order 1 is the
/// mean residual, zero up to rounding.
inline std::vector<double> central_moments(std::span<const double> values, int max_order) {
  if (max_order < 1) throw Refusal("central_moments requires max_order >= 1");
  std::vector<double> out(static_cast<std::size_t>(max_order), 0.0);
  if (values.empty()) return out;
  const double mu = mean(values);
  std::vector<double> dev(values.size()), pw(values.size(), 1.0);
  std::transform(values.begin(), values.end(), dev.begin(), [mu](double v) { return v - mu; });
  for (int k = 1; k <= max_order; ++k) {
    for (std::size_t i = 0; i < pw.size(); ++i) pw[i] *= dev[i];
    out[static_cast<std::size_t>(k - 1)] = pairwise_sum(std::span<const double>(pw)) / static_cast<double>(values.size());
  }
  return out;
}

/// Central moments divided by m2^{k/2}. All zero when the sample is constant.
inline std::vector<double> standardized_moments(std::span<const double> values, int max_order) {
  auto c = central_moments(values, max_order);
  if (max_order < 2 || c[1] <= 0.0) return std::vector<double>(c.size(), 0.0);
  const double sd = std::sqrt(c[1]);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] /= std::pow(sd, static_cast<double>(k + 1));
  return c;
}

/// Delta-method standard error of the standardized moment m_k / m_2^{k/2}, from
/// the empirical variance of its influence function
///   z^k - r_k - k r_{k-1} z - (k/2) r_k (z^2 - 1).
/// For Gaussian data this gives sqrt(6/m) for skewness and sqrt(24/m) for kurtosis.
inline double standardized_moment_se(std::span<const double> values, int order) {
  if (order < 3) throw Refusal("standardized_moment_se supports orders >= 3");
  const auto m = values.size();
  if (m < 2) return 0.0;
  const auto r = standardized_moments(values, order);
  const double var = central_moments(values, 2)[1];
  if (var <= 0.0) return 0.0;
  const double mu = mean(values), sd = std::sqrt(var);
  const double rk = r[static_cast<std::size_t>(order - 1)], rk1 = r[static_cast<std::size_t>(order - 2)];
  std::vector<double> influence(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double z = (values[i] - mu) / sd;
    influence[i] = std::pow(z, order) - rk - order * rk1 * z - 0.5 * order * rk * (z * z - 1);
  }
  return std::sqrt(sample_variance(influence) / static_cast<double>(m));
}

/// Standard error of the unbiased sample variance, sqrt((m4 - m2^2) / m).
inline double variance_se(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const auto c = central_moments(values, 4);
  return std::sqrt(std::max(c[3] - c[1] * c[1], 0.0) / static_cast<double>(values.size()));
}

struct ShapeStandardErrors {
  double skewness = 0;
  double kurtosis = 0;
};

inline ShapeStandardErrors shape_standard_errors(std::span<const double> values) {
  return {standardized_moment_se(values, 3), standardized_moment_se(values, 4)};
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// sup_x |F_m(x) - Phi(x / sigma)| for the empirical CDF F_m of the samples.
inline double ks_distance(std::span<const double> samples, double variance) {
  if (!(variance > 0.0)) throw Refusal("ks_distance requires a positive variance");
  if (samples.empty()) throw Refusal("ks_distance requires at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double sigma = std::sqrt(variance);
  const double m = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i] / sigma);
    const double di = static_cast<double>(i);
    d = std::max({d, (di + 1) / m - f, f - di / m});
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace circlt
