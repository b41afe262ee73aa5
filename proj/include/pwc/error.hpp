#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pwc {

enum class ErrorCategory {
  InvalidArgument, // bad parameters or preconditions
  Format,          // malformed dataset or config contents
  Io,              // filesystem failures
  Numeric,         // non-finite data, unreachable targets
};

constexpr std::string_view to_string(ErrorCategory c) {
  switch (c) {
  case ErrorCategory::InvalidArgument:
    return "argument";
  case ErrorCategory::Format:
    return "format";
  case ErrorCategory::Io:
    return "io";
  case ErrorCategory::Numeric:
    return "numeric";
  }
  return "unknown";
}

// Process exit code used by the CLI for each category.
constexpr int exit_code(ErrorCategory c) {
  switch (c) {
  case ErrorCategory::InvalidArgument:
    return 2;
  case ErrorCategory::Format:
    return 3;
  case ErrorCategory::Io:
    return 4;
  case ErrorCategory::Numeric:
    return 5;
  }
  return 1;
}

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string &what)
      : std::runtime_error(what), category_(category) {}

  [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

inline void require(bool cond, const std::string &msg,
                    ErrorCategory c = ErrorCategory::InvalidArgument) {
  if (!cond) {
    throw Error(c, msg);
  }
}

} // namespace pwc
