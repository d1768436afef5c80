#pragma once

#include <doctest.h>

#include <iomanip>
#include <sstream>
#include <string>

#include "storen/error.hpp"

namespace storen::test {

template <class Fn>
ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected storen::Error");
  return ErrorKind::Io;
}

template <class Bytes>
std::string hex(const Bytes& bytes) {
  std::ostringstream os;
  for (auto b : bytes) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<unsigned>(b);
  return os.str();
}

}  // namespace storen::test
