#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slitworks {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physics-domain violation (non-positive lengths, closed slit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller asked for something the engine does not support as configured.
class UsageError : public Error {
 public:
  using Error::Error;
};

class OpaqueAtAngleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Fresnel transfer function would alias on the current grid.
class AliasingError : public DomainError {
 public:
  AliasingError(const std::string& what, std::size_t requiredSamples)
      : DomainError(what), requiredSamples_(requiredSamples) {}
  std::size_t requiredSamples() const { return requiredSamples_; }

 private:
  std::size_t requiredSamples_;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Scenario validation failure. `path` is a dotted field path, `line` is 1-based or 0 if unknown.
class ScenarioError : public UsageError {
 public:
  ScenarioError(std::string path, const std::string& message, int line = 0)
      : UsageError(format(path, message, line)), path_(std::move(path)), message_(message), line_(line) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& path, const std::string& message, int line) {
    std::string s;
    if (line > 0) s += "line " + std::to_string(line) + ": ";
    if (!path.empty()) s += path + ": ";
    return s + message;
  }
  std::string path_;
  std::string message_;
  int line_;
};

}  // namespace slitworks
