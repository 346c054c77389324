#pragma once

#include <stdexcept>
#include <string>

namespace polymer {

/// Bad input to an operation (non-positive gamma, empty window, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coefficient model file that cannot be loaded.
class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact enumeration refused because its configuration estimate is too large.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A recurrence step needs to divide by a coefficient that vanishes at a
/// level the model did not declare as decoupled.
class SingularModel : public std::runtime_error {
 public:
  SingularModel(const std::string& what, int level) : std::runtime_error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// A recurrence step hit a declared decoupling level; the amplitude it would
/// produce is not fixed by the equation.
class DecoupledLevel : public std::runtime_error {
 public:
  DecoupledLevel(const std::string& what, int level) : std::runtime_error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// The two smallest generalized eigenvalues of the oscillation problem agree.
class NonUniqueMinimum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polymer
