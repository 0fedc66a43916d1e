#pragma once

#include <stdexcept>
#include <string>

namespace congr {

// Invalid input or parameters. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken internal invariant. Always a bug; the CLI maps this to exit code 1.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace congr
