#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace teamclean {

enum class ErrorKind {
  config,
  parse,
  ordering,
  domain,
  insufficient_data,
  interval,
  consistency,
  topology,
  infeasible,
  exhausted,
  partition_failure,
  branching_overflow,
  degenerate,
  io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// CLI exit status for an error kind: 2 config, 3 input, 4 algorithm, 5 I/O.
int exit_code_for(ErrorKind kind);

}  // namespace teamclean
