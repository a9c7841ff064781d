#pragma once

#include <stdexcept>
#include <string>

namespace nlscrit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the region where a formula or evaluator is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative solve that did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// Jacobian or genericity condition degenerate (catastrophe point, umbilic).
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested data.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Time integration blew up or drifted beyond tolerance.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double last_stable_time)
      : Error(what), last_stable_time_(last_stable_time) {}
  double last_stable_time() const { return last_stable_time_; }

 private:
  double last_stable_time_;
};

}  // namespace nlscrit
