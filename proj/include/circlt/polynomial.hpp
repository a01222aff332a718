#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "circlt/error.hpp"

namespace circlt {

/// P(x) = sum_{k=2}^d a_k x^k. Stored densely from degree 0, with a_0 = a_1 = 0.
class TestPolynomial {
public:
  /// coefficients[k] multiplies x^k. Trailing zeros are dropped; a nonzero
  /// constant or linear term is refused.
  static TestPolynomial from_dense(std::vector<double> coefficients) {
    while (!coefficients.empty() && coefficients.back() == 0.0) coefficients.pop_back();
    for (double c : coefficients)
      if (!std::isfinite(c)) throw Refusal("polynomial coefficients must be finite");
    if (coefficients.size() > 0 && coefficients[0] != 0.0)
      throw Refusal("polynomial has a constant term a_0; test polynomials must have degree >= 2 terms only");
    if (coefficients.size() > 1 && coefficients[1] != 0.0)
      throw Refusal("polynomial has a degree-one term a_1; test polynomials must have degree >= 2 terms only");
    if (coefficients.size() < 3) throw Refusal("polynomial must have degree d >= 2 with a_d != 0");
    TestPolynomial p;
    p.coefficients_ = std::move(coefficients);
    return p;
  }

  static TestPolynomial monomial(int power, double coefficient = 1.0) {
    if (power < 2) throw Refusal("test polynomial monomials need power >= 2");
    std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
    c.back() = coefficient;
    return from_dense(std::move(c));
  }

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

  double coefficient(int k) const {
    return (k >= 0 && k <= degree()) ? coefficients_[static_cast<std::size_t>(k)] : 0.0;
  }

  std::span<const double> dense() const { return coefficients_; }

  template <class T>
  T evaluate(const T& z) const {
    T acc{0};
    for (int k = degree(); k >= 0; --k) acc = acc * z + T(coefficient(k));
    return acc;
  }

  template <class T>
  T derivative(const T& z) const {
    T acc{0};
    for (int k = degree(); k >= 1; --k) acc = acc * z + T(k * coefficient(k));
    return acc;
  }

  template <class T>
  T second_derivative(const T& z) const {
    T acc{0};
    for (int k = degree(); k >= 2; --k) acc = acc * z + T(k * (k - 1) * coefficient(k));
    return acc;
  }

  /// m2(z) = sum_k k(k-1)|a_k| z^{k-2}; dominates |P''| on the disc of radius z.
  double majorant_m2(double z) const {
    double acc = 0;
    for (int k = degree(); k >= 2; --k) acc = acc * z + k * (k - 1) * std::abs(coefficient(k));
    return acc;
  }

  std::string to_string() const {
    std::string out;
    for (int k = 2; k <= degree(); ++k) {
      if (coefficient(k) == 0.0) continue;
      if (!out.empty()) out += " + ";
      out += std::to_string(coefficient(k)) + "*x^" + std::to_string(k);
    }
    return out;
  }

  friend bool operator==(const TestPolynomial&, const TestPolynomial&) = default;

private:
  TestPolynomial() = default;
  std::vector<double> coefficients_;
};

}  // namespace circlt
