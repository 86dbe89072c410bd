#pragma once

#include <stdexcept>
#include <string>

namespace wl1 {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Root finder could not establish a sign change after bracket expansion.
class NoSignChange : public Error {
 public:
  explicit NoSignChange(const std::string& msg) : Error(msg) {}
};

// Objective evaluated to NaN or infinity inside a bracket.
class NonFinite : public Error {
 public:
  explicit NonFinite(const std::string& msg) : Error(msg) {}
};

// A stationarity equation could not be solved for a model/point combination.
class RootFailure : public Error {
 public:
  explicit RootFailure(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature failed to reach the requested accuracy.
class QuadratureFailure : public Error {
 public:
  explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

// Monte-Carlo estimate too noisy to report (relative std error above gate).
class InsufficientSamples : public Error {
 public:
  explicit InsufficientSamples(const std::string& msg) : Error(msg) {}
};

// No feasible answer exists for the requested computation.
class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& msg) : Error(msg) {}
};

// Matrix does not have the full row rank required by the operation.
class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

// Iteration cap reached before convergence.
class IterLimit : public Error {
 public:
  explicit IterLimit(const std::string& msg) : Error(msg) {}
};

}  // namespace wl1

