#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jderiv {

/// Malformed or mismatched arguments (wrong modulus, wrong dimension, unknown label).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure failed one of its defining laws. `witness` holds the offending
/// basis indices, e.g. the triple (i, j, l) of a failed associativity check.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<std::size_t> witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

/// A computation was refused because the assembled ring would exceed the rank budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t required, std::size_t budget)
      : std::runtime_error("rank " + std::to_string(required) + " exceeds budget " +
                           std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  std::size_t required() const { return required_; }
  std::size_t budget() const { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

}  // namespace jderiv
