#pragma once

#include <stdexcept>
#include <string>

namespace relaxlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, partition, solver or sweep configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Block index or parameter outside the representable range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// State outside the domain of a map (vacuum, zero direction, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input does not satisfy a declared property (e.g. spectral support).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Call outside the hypotheses under which an estimate is stated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Time integration broke down (vacuum, NaN).
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace relaxlab
