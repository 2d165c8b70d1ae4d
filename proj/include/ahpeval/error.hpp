#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ahpeval {

// Error classes map to distinct CLI exit codes; see tools/main.cpp.
enum class ErrorKind {
  config,       // bad flags/config/profile, mismatched resume state
  validation,   // dataset/criteria/matrix contract violations
  parse,        // unusable backend output after retries
  backend,      // transport failure after retries
  credential,   // missing/rejected API key
  cache,        // unreadable cache file
  convergence,  // power iteration did not converge
  metric,       // undefined metric (no qualifying pairs)
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::string m) : Error(ErrorKind::config, std::move(m)) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::string m) : Error(ErrorKind::validation, std::move(m)) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(std::string m, std::string raw = {})
      : Error(ErrorKind::parse, std::move(m)), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;  // offending backend output, verbatim
};

class BackendError : public Error {
 public:
  explicit BackendError(std::string m) : Error(ErrorKind::backend, std::move(m)) {}
};

class CredentialError : public Error {
 public:
  explicit CredentialError(std::string m) : Error(ErrorKind::credential, std::move(m)) {}
};

class CacheError : public Error {
 public:
  explicit CacheError(std::string m) : Error(ErrorKind::cache, std::move(m)) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string m, double residual)
      : Error(ErrorKind::convergence, std::move(m)), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class MetricError : public Error {
 public:
  explicit MetricError(std::string m) : Error(ErrorKind::metric, std::move(m)) {}
};

}  // namespace ahpeval
