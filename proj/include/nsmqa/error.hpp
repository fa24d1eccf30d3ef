#pragma once

#include <stdexcept>
#include <string>

namespace nsmqa {

/// Failure categories. The CLI maps each one to its own exit code.
enum class ErrorKind {
  invalid_argument,
  parse,
  unknown_nucleus,
  missing_file,
  numerical,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nsmqa
