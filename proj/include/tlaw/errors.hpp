#pragma once

#include <stdexcept>
#include <string>

namespace tlaw {

// Error taxonomy shared by the library and the CLI. code() is the stable
// machine-readable tag the CLI prints on exit; what() is for humans.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error("domain_error", msg) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& msg)
      : Error("unsupported_operation", msg) {}
};

class NoSolutionError : public Error {
 public:
  explicit NoSolutionError(const std::string& msg)
      : Error("no_solution", msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error("config_error", msg) {}
};

}  // namespace tlaw
