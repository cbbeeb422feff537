#pragma once

#include <stdexcept>
#include <string>

namespace bclab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range model / space configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The model does not expose the capability an operation needs.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (support size, atom count) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Horizon too short, empty tail window, inconsistent index grids.
class HorizonError : public Error {
 public:
  using Error::Error;
};

}  // namespace bclab
