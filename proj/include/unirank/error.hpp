#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unirank {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating input data. The CLI maps this to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A (category, year) quartile lookup with no entry in the journal profile.
class QuartileLookupError : public InputError {
 public:
  using InputError::InputError;
};

/// Correlation requested over a list with no variation.
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

/// Formats "<source>:<line>: <message>".
std::string located(const std::string& source, std::size_t line, const std::string& message);

}  // namespace unirank
