#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "circlt/ensembles.hpp"
#include "circlt/error.hpp"
#include "circlt/polynomial.hpp"
#include "circlt/statistics.hpp"

namespace circlt {

using Complex = std::complex<double>;

inline constexpr double kImaginaryResidualTolerance = 1e-8;

namespace detail {

// lambda_t = sum_k x_k e^{+2 pi i t k / n}. Eigen's forward transform uses the
// negative exponent, so for real x the spectrum is its complex conjugate.
inline std::vector<Complex> circulant_eigenvalues(std::span<const double> row) {
  const auto n = row.size();
  std::vector<Complex> out(n);
  if (n == 1) {
    out[0] = row[0];
    return out;
  }
  Eigen::FFT<double> fft;
  std::vector<double> in(row.begin(), row.end());
  fft.fwd(out, in);
  for (auto& v : out) v = std::conj(v);
  return out;
}

// d_k = (1/n) sum_t values_t e^{-2 pi i t k / n}: first row of the circulant
// whose eigenvalues are `values`.
inline std::vector<Complex> circulant_symbol(const std::vector<Complex>& values) {
  const auto n = values.size();
  std::vector<Complex> out(n);
  if (n == 1) {
    out[0] = values[0];
    return out;
  }
  Eigen::FFT<double> fft;
  fft.fwd(out, values);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= inv_n;
  return out;
}

inline Complex int_power(Complex z, int p) {
  Complex acc{1.0, 0.0};
  while (p > 0) {
    if (p & 1) acc *= z;
    z *= z;
    p >>= 1;
  }
  return acc;
}

}  // namespace detail

/// One realization of the random circulant C_n with first row x = X / sqrt(n),
/// C_ij = x_{(j-i) mod n}. The spectrum is computed on first use and shared by
/// copies; publication is race-free.
class CirculantSample {
public:
  static CirculantSample from_raw(std::vector<double> raw_inputs) {
    if (raw_inputs.empty()) throw Refusal("a circulant sample needs n >= 1");
    CirculantSample s;
    const double scale = 1.0 / std::sqrt(static_cast<double>(raw_inputs.size()));
    s.scaled_.resize(raw_inputs.size());
    std::transform(raw_inputs.begin(), raw_inputs.end(), s.scaled_.begin(), [scale](double v) { return v * scale; });
    s.raw_ = std::move(raw_inputs);
    s.cache_ = std::make_shared<SpectrumCache>();
    return s;
  }

  std::size_t size() const { return raw_.size(); }
  std::span<const double> raw_inputs() const { return raw_; }
  std::span<const double> scaled_row() const { return scaled_; }

  const std::vector<Complex>& spectrum() const {
    std::call_once(cache_->once, [this] { cache_->values = detail::circulant_eigenvalues(scaled_); });
    return cache_->values;
  }

private:
  struct SpectrumCache {
    std::once_flag once;
    std::vector<Complex> values;
  };

  CirculantSample() = default;
  std::vector<double> raw_;
  std::vector<double> scaled_;
  std::shared_ptr<SpectrumCache> cache_;
};

inline CirculantSample build_sample(const EnsembleSpec& spec, std::size_t n, const RandomStream& stream) {
  return CirculantSample::from_raw(sample_sequence(spec, n, stream));
}

inline const std::vector<Complex>& spectrum(const CirculantSample& sample) { return sample.spectrum(); }

/// Re(sum_t lambda_t^p), checking that the imaginary part is rounding noise.
inline double trace_power_spectral(const CirculantSample& sample, int p) {
  if (p < 1) throw Refusal("trace powers need p >= 1");
  const auto& lambda = sample.spectrum();
  std::vector<Complex> powers(lambda.size());
  std::transform(lambda.begin(), lambda.end(), powers.begin(), [p](Complex z) { return detail::int_power(z, p); });
  const Complex total = pairwise_sum(std::span<const Complex>(powers));
  if (std::abs(total.imag()) > kImaginaryResidualTolerance * (1.0 + std::abs(total.real())))
    throw ResidualError("imaginary residual " + std::to_string(total.imag()) + " in spectral trace of power " +
                        std::to_string(p));
  return total.real();
}

/// n * sum over (i_1..i_p) with i_1+...+i_p = 0 (mod n) of x_{i_1}...x_{i_p}, by
/// enumerating the n^{p-1} free indices.
inline double trace_power_direct(const CirculantSample& sample, int p,
                                 std::uint64_t budget = kDefaultEnumerationBudget) {
  if (p < 1) throw Refusal("trace powers need p >= 1");
  const auto x = sample.scaled_row();
  const std::size_t n = x.size();
  const double required = std::pow(static_cast<double>(n), p - 1);
  if (required > static_cast<double>(budget)) throw BudgetExceeded("trace_power_direct", required, budget);

  const int free = p - 1;
  double total = 0;
  // Depth-first over the free indices with running product and residue.
  auto visit = [&](auto&& self, int depth, std::size_t residue, double product) -> void {
    if (depth == free) {
      const std::size_t last = (n - residue) % n;
      total += product * x[last];
      return;
    }
    for (std::size_t i = 0; i < n; ++i) self(self, depth + 1, (residue + i) % n, product * x[i]);
  };
  visit(visit, 0, 0, 1.0);
  return static_cast<double>(n) * total;
}

inline double trace_polynomial(const CirculantSample& sample, const TestPolynomial& poly) {
  double total = 0;
  for (int k = 2; k <= poly.degree(); ++k)
    if (poly.coefficient(k) != 0.0) total += poly.coefficient(k) * trace_power_spectral(sample, k);
  return total;
}

/// Operator 2-norm. Circulants are normal, so this is the spectral radius.
inline double spectral_norm(const CirculantSample& sample) {
  double best = 0;
  for (const auto& z : sample.spectrum()) best = std::max(best, std::abs(z));
  return best;
}

/// Gradient of g(X) = Tr P(C_n) with respect to the raw inputs X.
///
/// P'(C_n) is circulant with symbol d; dTr P(C)/dx_m = Tr(P'(C) S^m) = n d_{-m},
/// and x_m = X_m / sqrt(n), so dg/dX_m = sqrt(n) Re d_{(n-m) mod n}.
inline std::vector<double> gradient_trace_polynomial(const CirculantSample& sample, const TestPolynomial& poly) {
  const auto& lambda = sample.spectrum();
  const std::size_t n = lambda.size();
  std::vector<Complex> dp(n);
  std::transform(lambda.begin(), lambda.end(), dp.begin(), [&poly](Complex z) { return poly.derivative(z); });
  const auto symbol = detail::circulant_symbol(dp);

  double scale = 0, residual = 0;
  for (const auto& d : symbol) {
    scale = std::max(scale, std::abs(d));
    residual = std::max(residual, std::abs(d.imag()));
  }
  if (residual > kImaginaryResidualTolerance * (1.0 + scale))
    throw ResidualError("imaginary residual " + std::to_string(residual) + " in the symbol of P'(C_n)");

  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> grad(n);
  for (std::size_t m = 0; m < n; ++m) grad[m] = root_n * symbol[(n - m) % n].real();
  return grad;
}

/// m2(||C_n||) / n, the Hessian-norm majorant used for kappa_2.
inline double hessian_norm_bound(const CirculantSample& sample, const TestPolynomial& poly) {
  return poly.majorant_m2(spectral_norm(sample)) / static_cast<double>(sample.size());
}

/// Exact operator norm of the Hessian of g(X) = Tr P(C_n) in the raw inputs.
///
/// With F the unitary DFT, the Hessian equals F diag(P''(lambda_t)) F; F^2 is the
/// index-reversal permutation, so its norm is max_t |P''(lambda_t)|.
inline double hessian_operator_norm(const CirculantSample& sample, const TestPolynomial& poly) {
  double best = 0;
  for (const auto& z : sample.spectrum()) best = std::max(best, std::abs(poly.second_derivative(z)));
  return best;
}

}  // namespace circlt
