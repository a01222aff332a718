#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "circlt/circulant.hpp"
#include "circlt/combinatorics.hpp"
#include "circlt/ensembles.hpp"
#include "circlt/error.hpp"
#include "circlt/parallel.hpp"
#include "circlt/polynomial.hpp"
#include "circlt/statistics.hpp"

namespace circlt {

enum class Centering { sample_mean };

inline constexpr int kMaxMomentOrder = 8;
inline constexpr std::size_t kLowConfidenceReplicas = 30;

struct ExperimentConfig {
  std::size_t n = 0;
  std::size_t replicas = 2000;
  TestPolynomial poly = TestPolynomial::monomial(2);
  EnsembleSpec ensemble = EnsembleSpec::make(Family::gaussian);
  std::uint64_t master_seed = 0;
  Centering centering = Centering::sample_mean;
  std::size_t worker_count = 1;

  void validate() const {
    if (n < 2) throw Refusal("experiments need matrix size n >= 2");
    if (replicas < 2) throw Refusal("experiments need at least 2 replicas");
    if (worker_count < 1) throw Refusal("worker_count must be positive");
  }
};

struct ExperimentSummary {
  std::size_t n = 0;
  std::size_t replicas = 0;
  std::vector<double> raw_traces;  // Tr P(C_n) per replica
  std::vector<double> statistic;   // W_r = (T_r - mean T) / sqrt(n)
  double trace_mean = 0;
  double trace_mean_se = 0;
  double variance = 0;             // unbiased sample variance of W
  std::vector<double> central_moments;       // orders 1..8
  std::vector<double> standardized_moments;  // orders 1..8
  double skewness_se = 0;
  double kurtosis_se = 0;
  double ks_distance = 0;          // against N(0, target_variance)
  double target_variance = 0;
  std::string target_variance_exact;
  bool low_confidence = false;
  double wall_time_seconds = 0;
};

/// Inputs and result of the Stein-method total-variation bound
/// 2 sqrt5 (c1 c2 kappa0 + c1^3 kappa1 kappa2) / sigma2.
///
/// kappa2 uses the majorant m2(||C_n||)/n. kappa2_exact_hessian uses the exact
/// Hessian norm max_t |P''(lambda_t)| and feeds tv_bound_exact_hessian.
struct SteinEstimate {
  std::size_t n = 0;
  std::size_t replicas = 0;
  double c1 = 0, c2 = 0;
  double kappa0 = 0, kappa1 = 0, kappa2 = 0;
  double kappa2_exact_hessian = 0;
  double sigma2_hat = 0;       // empirical Var(Tr P(C_n))
  double n_sigma2_target = 0;  // n * limiting variance
  double tv_bound = 0;
  double tv_bound_exact_hessian = 0;
};

inline double stein_tv_bound(double c1, double c2, double kappa0, double kappa1, double kappa2, double sigma2) {
  if (!(sigma2 > 0.0)) throw Refusal("total-variation bound needs a positive variance");
  return 2.0 * std::sqrt(5.0) * (c1 * c2 * kappa0 + c1 * c1 * c1 * kappa1 * kappa2) / sigma2;
}

/// Central sample moments of orders 1..max_order; max_order is capped at 8.
inline std::vector<double> empirical_moments(std::span<const double> samples, int max_order) {
  if (max_order < 1 || max_order > kMaxMomentOrder)
    throw Refusal("empirical_moments supports orders 1.." + std::to_string(kMaxMomentOrder));
  return central_moments(samples, max_order);
}

inline ExperimentSummary run_clt_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  ExperimentSummary s;
  s.n = config.n;
  s.replicas = config.replicas;
  s.raw_traces.assign(config.replicas, 0.0);
  parallel_for(config.replicas, config.worker_count, [&](std::size_t r) {
    const auto sample = build_sample(config.ensemble, config.n, RandomStream{config.master_seed, r});
    s.raw_traces[r] = trace_polynomial(sample, config.poly);
  });

  const auto target = limiting_variance(config.poly);
  s.target_variance = target.value;
  s.target_variance_exact = target.exact.str();

  s.trace_mean = mean(s.raw_traces);
  s.trace_mean_se = std::sqrt(sample_variance(s.raw_traces) / static_cast<double>(config.replicas));
  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(config.n));
  s.statistic.resize(config.replicas);
  for (std::size_t r = 0; r < config.replicas; ++r) s.statistic[r] = (s.raw_traces[r] - s.trace_mean) * inv_root_n;

  s.variance = sample_variance(s.statistic);
  s.central_moments = central_moments(s.statistic, kMaxMomentOrder);
  s.standardized_moments = standardized_moments(s.statistic, kMaxMomentOrder);
  const auto se = shape_standard_errors(s.statistic);
  s.skewness_se = se.skewness;
  s.kurtosis_se = se.kurtosis;
  s.ks_distance = ks_distance(s.statistic, s.target_variance);
  s.low_confidence = config.replicas < kLowConfidenceReplicas;
  s.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

inline void require_stein_ensemble(const EnsembleSpec& spec) {
  if (!spec.is_smooth())
    throw Refusal("the total-variation bound requires inputs in a smooth class L(c1,c2) (laws of u(Z) with "
                  "|u'| <= c1, |u''| <= c2); " + std::string(to_string(spec.family)) + " is not");
  if (!spec.symmetric) throw Refusal("the total-variation bound requires symmetric inputs");
}

/// Monte Carlo estimates of kappa0, kappa1, kappa2 and Var(Tr P(C_n)); tv fields left at zero.
inline SteinEstimate estimate_kappas(const ExperimentConfig& config) {
  config.validate();
  require_stein_ensemble(config.ensemble);

  const std::size_t m = config.replicas;
  std::vector<double> traces(m), grad4(m), grad_norm4(m), hess4(m), hess_exact4(m);
  parallel_for(m, config.worker_count, [&](std::size_t r) {
    const auto sample = build_sample(config.ensemble, config.n, RandomStream{config.master_seed, r});
    traces[r] = trace_polynomial(sample, config.poly);
    const auto grad = gradient_trace_polynomial(sample, config.poly);
    std::vector<double> sq(grad.size()), quart(grad.size());
    for (std::size_t k = 0; k < grad.size(); ++k) {
      sq[k] = grad[k] * grad[k];
      quart[k] = sq[k] * sq[k];
    }
    grad4[r] = pairwise_sum(std::span<const double>(quart));
    const double norm2 = pairwise_sum(std::span<const double>(sq));
    grad_norm4[r] = norm2 * norm2;
    hess4[r] = std::pow(hessian_norm_bound(sample, config.poly), 4);
    hess_exact4[r] = std::pow(hessian_operator_norm(sample, config.poly), 4);
  });

  SteinEstimate e;
  e.n = config.n;
  e.replicas = m;
  e.c1 = *config.ensemble.c1;
  e.c2 = *config.ensemble.c2;
  e.kappa0 = std::sqrt(mean(grad4));
  e.kappa1 = std::pow(mean(grad_norm4), 0.25);
  e.kappa2 = std::pow(mean(hess4), 0.25);
  e.kappa2_exact_hessian = std::pow(mean(hess_exact4), 0.25);
  e.sigma2_hat = sample_variance(traces);
  e.n_sigma2_target = static_cast<double>(config.n) * limiting_variance(config.poly).value;
  return e;
}

inline SteinEstimate chatterjee_tv_bound(const ExperimentConfig& config) {
  auto e = estimate_kappas(config);
  e.tv_bound = stein_tv_bound(e.c1, e.c2, e.kappa0, e.kappa1, e.kappa2, e.sigma2_hat);
  e.tv_bound_exact_hessian = stein_tv_bound(e.c1, e.c2, e.kappa0, e.kappa1, e.kappa2_exact_hessian, e.sigma2_hat);
  return e;
}

struct NormScalingRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double max_ratio = 0;   // max over trials of ||C_n|| / sqrt(log n)
  double mean_ratio = 0;
};

inline std::vector<NormScalingRow> norm_scaling_study(const EnsembleSpec& spec, const std::vector<std::size_t>& sizes,
                                                      std::size_t trials, std::uint64_t master_seed = 0,
                                                      std::size_t workers = 1) {
  if (!spec.symmetric) throw Refusal("norm scaling study requires a symmetric subgaussian ensemble");
  if (trials < 1) throw Refusal("norm scaling study needs at least one trial per size");
  std::vector<NormScalingRow> rows;
  for (std::size_t n : sizes) {
    if (n < 2) throw Refusal("norm scaling sizes must be >= 2");
    std::vector<double> ratios(trials);
    const double denom = std::sqrt(std::log(static_cast<double>(n)));
    parallel_for(trials, workers, [&](std::size_t t) {
      ratios[t] = spectral_norm(build_sample(spec, n, RandomStream{master_seed, t})) / denom;
    });
    rows.push_back({n, trials, *std::max_element(ratios.begin(), ratios.end()), mean(ratios)});
  }
  return rows;
}

struct VarianceConvergenceRow {
  std::size_t n = 0;
  double variance = 0;
  double target = 0;
  double gap = 0;  // |variance - target|
  double trace_mean = 0;
  double trace_mean_se = 0;
};

inline std::vector<VarianceConvergenceRow> variance_convergence_study(const ExperimentConfig& base,
                                                                      const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2) throw Refusal("variance convergence study needs at least two sizes");
  std::vector<VarianceConvergenceRow> rows;
  for (std::size_t n : sizes) {
    auto config = base;
    config.n = n;
    const auto s = run_clt_experiment(config);
    rows.push_back({n, s.variance, s.target_variance, std::abs(s.variance - s.target_variance), s.trace_mean,
                    s.trace_mean_se});
  }
  return rows;
}

}  // namespace circlt
