#pragma once

#include <stdexcept>
#include <string>

namespace timo {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, filter bank, or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation
/// (negative exponent on a nonzero-mean field, p < 1, empty trajectory, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or failed accuracy check inside a numerical kernel.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Loss of hyperbolicity (sigma' <= 0) or blow-up guard tripped during a run.
class StabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace timo
