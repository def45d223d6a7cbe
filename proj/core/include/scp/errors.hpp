#pragma once

#include <stdexcept>
#include <string>

namespace scp {

enum class ErrorKind {
  domain,
  precondition,
  unsupported,
  pole,
  convergence,
  degenerate,
  alias,
  parse,
  coverage,
  resource,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* kind_name(ErrorKind kind) noexcept;

// Process exit status used by the command-line front end:
// 2 for coverage/resource failures, 1 for everything else.
int exit_code_for(ErrorKind kind) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace scp
