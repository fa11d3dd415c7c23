#pragma once

#include <stdexcept>
#include <string>

namespace cadse {

/// Coarse failure class. The CLI maps each class to a process exit code.
enum class ErrorKind {
  usage,       // invalid input, configuration or arguments
  backend,     // evaluator, external process or I/O failure
  corruption,  // unreadable or inconsistent journal data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_usage(const std::string& message) {
  throw Error(ErrorKind::usage, message);
}

[[noreturn]] inline void throw_backend(const std::string& message) {
  throw Error(ErrorKind::backend, message);
}

[[noreturn]] inline void throw_corruption(const std::string& message) {
  throw Error(ErrorKind::corruption, message);
}

}  // namespace cadse
