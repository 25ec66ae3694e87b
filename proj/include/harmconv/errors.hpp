#pragma once

#include <stdexcept>
#include <string>

namespace harmconv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anything the caller can fix by changing inputs: bad flags, out-of-range
// parameters, malformed config or CSV. The CLI maps these to exit code 2.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class ParameterRangeError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

// sin(beta) == 0: the strip collapses.
class DegenerateStripError : public ParameterRangeError {
 public:
  using ParameterRangeError::ParameterRangeError;
};

class InvalidOrderError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

class ParseError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NonInvertibleSeriesError : public Error {
 public:
  using Error::Error;
};

class ShearDegenerateError : public Error {
 public:
  using Error::Error;
};

class DegenerateMapError : public Error {
 public:
  using Error::Error;
};

}  // namespace harmconv
