#pragma once

#include <stdexcept>
#include <string>

namespace levyheat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfiniteMoment : public Error {
 public:
  using Error::Error;
};

class DegenerateLocation : public Error {
 public:
  using Error::Error;
};

class FutureJump : public Error {
 public:
  using Error::Error;
};

class OutOfWindow : public Error {
 public:
  using Error::Error;
};

class DriftUnsupported : public Error {
 public:
  using Error::Error;
};

class FactorizationFailure : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class MomentRangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

/// Invalid user input (config files, CLI values). Carries the offending line
/// when one is known (0 otherwise).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace levyheat
