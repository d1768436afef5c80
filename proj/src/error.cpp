#include "storen/error.hpp"

namespace storen {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::MalformedInput: return "malformed-input";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace storen
