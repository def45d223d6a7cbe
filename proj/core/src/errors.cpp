#include "scp/errors.hpp"

namespace scp {

const char* kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::pole: return "pole";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::alias: return "alias";
    case ErrorKind::parse: return "parse";
    case ErrorKind::coverage: return "coverage";
    case ErrorKind::resource: return "resource";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) noexcept {
  return (kind == ErrorKind::coverage || kind == ErrorKind::resource) ? 2 : 1;
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace scp
