#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "circlt/circulant.hpp"
#include "circlt/polynomial.hpp"

namespace circlt::testing {

inline Eigen::MatrixXd dense_circulant(std::span<const double> row) {
  const auto n = static_cast<Eigen::Index>(row.size());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = row[static_cast<std::size_t>(((j - i) % n + n) % n)];
  return c;
}

/// Tr P(C) by explicit matrix powers.
inline double dense_trace_polynomial(const CirculantSample& sample, const TestPolynomial& poly) {
  const auto c = dense_circulant(sample.scaled_row());
  Eigen::MatrixXd power = c;
  double total = 0;
  for (int k = 2; k <= poly.degree(); ++k) {
    power = power * c;
    total += poly.coefficient(k) * power.trace();
  }
  return total;
}

inline double spectral_g(const std::vector<double>& raw, const TestPolynomial& poly) {
  return trace_polynomial(CirculantSample::from_raw(raw), poly);
}

inline std::vector<double> fd_gradient(const std::vector<double>& raw, const TestPolynomial& poly, double h = 1e-5) {
  std::vector<double> grad(raw.size());
  for (std::size_t m = 0; m < raw.size(); ++m) {
    auto up = raw, down = raw;
    up[m] += h;
    down[m] -= h;
    grad[m] = (spectral_g(up, poly) - spectral_g(down, poly)) / (2 * h);
  }
  return grad;
}

/// Hessian assembled from central differences of the analytic gradient, symmetrized.
inline Eigen::MatrixXd fd_hessian(const std::vector<double>& raw, const TestPolynomial& poly, double h = 1e-5) {
  const auto n = static_cast<Eigen::Index>(raw.size());
  Eigen::MatrixXd hess(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto up = raw, down = raw;
    up[static_cast<std::size_t>(j)] += h;
    down[static_cast<std::size_t>(j)] -= h;
    const auto gu = gradient_trace_polynomial(CirculantSample::from_raw(up), poly);
    const auto gd = gradient_trace_polynomial(CirculantSample::from_raw(down), poly);
    for (Eigen::Index i = 0; i < n; ++i)
      hess(i, j) = (gu[static_cast<std::size_t>(i)] - gd[static_cast<std::size_t>(i)]) / (2 * h);
  }
  return 0.5 * (hess + hess.transpose());
}

inline double symmetric_operator_norm(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

inline double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Scale of sum_t lambda_t^p used for relative comparisons of traces.
inline double trace_scale(const CirculantSample& sample, int p) {
  double s = 0;
  for (const auto& z : sample.spectrum()) s += std::pow(std::abs(z), p);
  return std::max(s, 1e-300);
}

/// Random test polynomial of the given degree with coefficients in [-2, 2] and a_d != 0.
inline TestPolynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  for (int k = 2; k <= degree; ++k) c[static_cast<std::size_t>(k)] = coef(rng);
  if (c.back() == 0.0) c.back() = 1.0;
  return TestPolynomial::from_dense(c);
}

}  // namespace circlt::testing
