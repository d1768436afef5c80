#pragma once

#include <stdexcept>
#include <string>

namespace storen {

enum class ErrorKind {
  Usage,           // caller violated a precondition
  Domain,          // mathematically undefined (e.g. inverse of zero)
  MalformedInput,  // bytes or streams that do not parse
  Capacity,        // exhaustive enumeration too large
  Parameter,       // inconsistent code/protocol parameters
  Protocol,        // peer disagreement (fingerprint, phase, beta)
  Unsupported,     // operation not defined for this family kind
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) throw Error(kind, what);
}
inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace storen
