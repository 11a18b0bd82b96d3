#pragma once

#include <stdexcept>
#include <string>

namespace fssc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, matrices, label vectors).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A parameter violates its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced unusable output.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside one stage of the clustering pipeline so
/// callers can tell which stage failed.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace fssc
