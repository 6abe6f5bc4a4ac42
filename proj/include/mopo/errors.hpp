#pragma once

#include <stdexcept>
#include <string>

namespace mopo {

// Base of every error thrown by the library. The CLI maps ConfigError to
// exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Wavelength outside a material's tabulated range.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NumericalInstability : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

// Counter-propagating gain at or above g = pi/2.
class AboveThreshold : public Error {
 public:
  using Error::Error;
};

class InvalidCoeffs : public Error {
 public:
  using Error::Error;
};

class NoCrossing : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class BadBracket : public Error {
 public:
  using Error::Error;
};

}  // namespace mopo
