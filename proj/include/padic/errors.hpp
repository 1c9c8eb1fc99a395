#pragma once

#include <stdexcept>
#include <string>

namespace padic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or malformed input: out-of-range indices, invalid models, bad configs.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two representations that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure ran out of iterations or failed to reduce its residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace padic
