#pragma once

#include <stdexcept>
#include <string>

namespace cohnet {

/// Base class for failures of the numerical machinery (as opposed to bad
/// user input). CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity was requested that is undefined (infinite) on a disconnected graph.
class DisconnectedGraphError : public NumericalError {
 public:
  explicit DisconnectedGraphError(const std::string& what) : NumericalError(what) {}
};

/// The system matrix is singular or indefinite under tolerance.
class SingularSystemError : public NumericalError {
 public:
  explicit SingularSystemError(const std::string& what) : NumericalError(what) {}
};

/// Stochastic integration diverged or the step size violates the stability bound.
class InstabilityError : public NumericalError {
 public:
  explicit InstabilityError(const std::string& what) : NumericalError(what) {}
};

/// A randomized generator exhausted its retry budget.
class GenerationError : public NumericalError {
 public:
  explicit GenerationError(const std::string& what) : NumericalError(what) {}
};

/// Exhaustive enumeration would exceed the configured budget. CLI exit code 3.
class EnumerationBudgetError : public std::runtime_error {
 public:
  explicit EnumerationBudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; message carries file and line context. CLI exit code 1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cohnet
