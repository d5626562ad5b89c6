#pragma once

#include <stdexcept>
#include <string>

namespace kinwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: configuration, arguments outside an operation's domain,
// requests the stored state cannot serve. Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  ConfigError(int line, const std::string& what)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A run reached a state the configuration promised could not happen.
// Maps to CLI exit code 2.
class RuntimeAssertion : public Error {
 public:
  using Error::Error;
};

class LightConeViolation : public RuntimeAssertion {
 public:
  using RuntimeAssertion::RuntimeAssertion;
};

class AuditFailure : public RuntimeAssertion {
 public:
  using RuntimeAssertion::RuntimeAssertion;
};

}  // namespace kinwave
