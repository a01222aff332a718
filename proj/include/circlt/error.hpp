#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace circlt {

/// A request the library declines to carry out: invalid arguments, unmet
/// preconditions, or an ensemble that lacks a required property.
class Refusal : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would visit more tuples than its budget allows.
class BudgetExceeded : public Refusal {
public:
  BudgetExceeded(const std::string& what, double required, std::uint64_t budget)
      : Refusal(what + ": requires " + std::to_string(static_cast<long double>(required)) +
                " tuples, enumeration budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  double required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

private:
  double required_;
  std::uint64_t budget_;
};

/// A quantity that must be real came back with a non-negligible imaginary part.
class ResidualError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

}  // namespace circlt
