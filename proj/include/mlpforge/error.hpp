#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlpforge {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid topology, hyperparameters or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Vector length does not match the layer it is fed to.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fitting bounds on data whose min equals its max.
class DegenerateSpanError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed text input. line() is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A model file could not be reconstructed.
class LoadError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersionError : public LoadError {
 public:
  explicit UnsupportedVersionError(long long version)
      : LoadError("unsupported model format_version " + std::to_string(version)), version_(version) {}

  long long version() const noexcept { return version_; }

 private:
  long long version_;
};

}  // namespace mlpforge
